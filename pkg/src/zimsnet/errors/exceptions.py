"""Exception hierarchy and exit-code mapping for zimsnet."""

from __future__ import annotations

from typing import Any, Optional


class ZimsnetError(Exception):
    """
    Base exception for zimsnet.

    Attributes:
        details: Optional structured information (e.g., shapes, iteration, block).
        cause: Optional original exception that triggered this error.
    """

    def __init__(
        self,
        message: str,
        *,
        details: Optional[dict[str, Any]] = None,
        cause: Optional[BaseException] = None,
    ) -> None:
        super().__init__(message)
        self.details = details or {}
        self.cause = cause


class DimensionError(ZimsnetError):
    """Raised when tensor shapes or mode indices do not agree."""


class ArgumentError(ZimsnetError):
    """Raised when distribution or configuration parameters are invalid."""


class InvariantViolationError(ZimsnetError):
    """Raised when a state violates a model invariant (e.g. d=1 where x=1)."""


class ValidationError(ZimsnetError):
    """Raised when input data (panel, covariates, config) fails validation."""


class ParseError(ZimsnetError):
    """Raised when a panel, covariate or draw file cannot be parsed."""


class NumericalError(ZimsnetError):
    """Raised on numerical failure (degenerate emissions, factorization)."""


class SamplerError(ZimsnetError):
    """Raised when a Gibbs block fails inside a chain run."""


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4


def exit_code_for(exc: BaseException) -> int:
    """
    Map an exception to a CLI exit code.

    Policy:
        - ValidationError / ParseError / DimensionError / ArgumentError /
          InvariantViolationError -> 3
        - NumericalError / SamplerError -> 4
        - anything else -> 4
    """
    if isinstance(
        exc,
        (
            ValidationError,
            ParseError,
            DimensionError,
            ArgumentError,
            InvariantViolationError,
        ),
    ):
        return EXIT_VALIDATION
    return EXIT_NUMERICAL
