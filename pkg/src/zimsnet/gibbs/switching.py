"""Block (IV): zero-inflation probabilities and the transition matrix."""

from __future__ import annotations

import numpy as np

from zimsnet.distributions import RngStream, sample_beta, sample_dirichlet
from zimsnet.model import PriorConfig, allocation_counts, transition_counts


def sample_rho(d: np.ndarray, s: np.ndarray, cfg: PriorConfig, rng: RngStream) -> np.ndarray:
    """rho_l ~ Be(N1_l + a_rho, N0_l + b_rho), counts over periods in regime l."""
    n1, n0 = allocation_counts(d, s, cfg.n_regimes)
    return np.array(
        [float(sample_beta(n1[l] + cfg.a_rho[l], n0[l] + cfg.b_rho[l], rng)) for l in range(cfg.n_regimes)]
    )


def sample_xi(s: np.ndarray, cfg: PriorConfig, rng: RngStream) -> np.ndarray:
    """Row l of Xi ~ Dir(c[l] + N[l, :]) with N the transition counts of s."""
    counts = transition_counts(s, cfg.n_regimes)
    return np.vstack([sample_dirichlet(cfg.c[l] + counts[l], rng) for l in range(cfg.n_regimes)])
