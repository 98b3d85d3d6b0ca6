"""Public pooled-model exports for zimsnet."""

from __future__ import annotations

from .sampler import (
    PooledDraw,
    PooledGibbsSampler,
    initial_pooled_state,
    pooled_g_conditional,
    pooled_tau_params,
    pooled_w_params,
    relabel_pooled,
    run_pooled_chain,
    sample_g_pooled,
    sample_variances_pooled,
)
from .state import PooledParams, pooled_edge_probability, pooled_path_predictor, pooled_predictors

__all__ = [
    "PooledParams",
    "PooledDraw",
    "PooledGibbsSampler",
    "pooled_predictors",
    "pooled_path_predictor",
    "pooled_edge_probability",
    "pooled_g_conditional",
    "sample_g_pooled",
    "pooled_tau_params",
    "pooled_w_params",
    "sample_variances_pooled",
    "relabel_pooled",
    "initial_pooled_state",
    "run_pooled_chain",
]
