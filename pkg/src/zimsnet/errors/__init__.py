"""Public error exports for zimsnet."""

from __future__ import annotations

from .exceptions import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    ArgumentError,
    DimensionError,
    InvariantViolationError,
    NumericalError,
    ParseError,
    SamplerError,
    ValidationError,
    ZimsnetError,
    exit_code_for,
)

__all__ = [
    "ZimsnetError",
    "DimensionError",
    "ArgumentError",
    "InvariantViolationError",
    "ValidationError",
    "ParseError",
    "NumericalError",
    "SamplerError",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_VALIDATION",
    "EXIT_NUMERICAL",
    "exit_code_for",
]
