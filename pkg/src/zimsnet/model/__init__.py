"""Public model exports for zimsnet."""

from __future__ import annotations

from .config import N_MODES, PriorConfig
from .likelihood import (
    allocation_counts,
    complete_data_loglik,
    edge_prob,
    linear_predictor,
    log_edge_prob,
    log_emission,
    log_emissions,
    path_predictor,
    regime_predictors,
    transition_counts,
)
from .panel import NetworkPanel, network_density, total_degree
from .prior import log_prior, log_prior_blocks
from .state import AugmentedState, RegimeParams, ShrinkageState

__all__ = [
    "N_MODES",
    "NetworkPanel",
    "PriorConfig",
    "RegimeParams",
    "ShrinkageState",
    "AugmentedState",
    "edge_prob",
    "log_edge_prob",
    "linear_predictor",
    "regime_predictors",
    "path_predictor",
    "log_emission",
    "log_emissions",
    "transition_counts",
    "allocation_counts",
    "complete_data_loglik",
    "log_prior",
    "log_prior_blocks",
    "total_degree",
    "network_density",
]
