"""Public simulation exports for zimsnet."""

from __future__ import annotations

from .geweke import GewekeResult, GewekeStatistic, geweke_functions, geweke_pair
from .panel import SimTruth, simulate_edges, simulate_panel, standard_covariates
from .prior import (
    draw_pooled_prior,
    draw_prior_state,
    sample_markov_path,
    stationary_distribution,
)

__all__ = [
    "SimTruth",
    "simulate_panel",
    "simulate_edges",
    "standard_covariates",
    "draw_prior_state",
    "draw_pooled_prior",
    "sample_markov_path",
    "stationary_distribution",
    "GewekeStatistic",
    "GewekeResult",
    "geweke_functions",
    "geweke_pair",
]
