"""zimsnet public API."""

from __future__ import annotations

from zimsnet.errors import (
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
from zimsnet.gibbs import ChainConfig, ChainResult, Draw, GibbsSampler, run_chain
from zimsnet.model import NetworkPanel, PriorConfig, RegimeParams, ShrinkageState
from zimsnet.pooled import PooledGibbsSampler, PooledParams, run_pooled_chain
from zimsnet.simulate import SimTruth, geweke_pair, simulate_panel
from zimsnet.tensor import ParafacMarginals

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # High-level
    "run_chain",
    "run_pooled_chain",
    "simulate_panel",
    "geweke_pair",
    "GibbsSampler",
    "PooledGibbsSampler",
    # Model / state
    "NetworkPanel",
    "PriorConfig",
    "ChainConfig",
    "ChainResult",
    "Draw",
    "RegimeParams",
    "ShrinkageState",
    "PooledParams",
    "ParafacMarginals",
    "SimTruth",
    # Errors
    "ZimsnetError",
    "DimensionError",
    "ArgumentError",
    "InvariantViolationError",
    "ValidationError",
    "ParseError",
    "NumericalError",
    "SamplerError",
    "exit_code_for",
]
