"""Deterministic-where-possible starting state for a chain."""

from __future__ import annotations

import numpy as np
from scipy import stats

from zimsnet.distributions import RngStream
from zimsnet.model import (
    N_MODES,
    AugmentedState,
    NetworkPanel,
    PriorConfig,
    RegimeParams,
    ShrinkageState,
    network_density,
)
from zimsnet.tensor import ParafacMarginals

INIT_GAMMA_SD = 0.1
RHO_TIE_GAP = 1e-6


def density_regimes(panel: NetworkPanel, n_regimes: int) -> np.ndarray:
    """Regime 0 for the sparsest periods up to L-1 for the densest, split at density quantiles."""
    density = network_density(panel)
    if n_regimes == 1:
        return np.zeros(panel.T, dtype=np.int64)
    cuts = np.quantile(density, np.arange(1, n_regimes) / n_regimes)
    return np.searchsorted(cuts, density, side="right").astype(np.int64)


def ordered_rho(cfg: PriorConfig) -> np.ndarray:
    """Strictly descending starting rho: quantile (L - l) / (L + 1) of each Beta prior."""
    L = cfg.n_regimes
    levels = (L - np.arange(L)) / (L + 1.0)
    rho = np.sort(stats.beta.ppf(levels, cfg.a_rho, cfg.b_rho))[::-1].copy()
    # per-regime priors can put two quantiles on the same value
    for l in range(1, L):
        rho[l] = min(rho[l], rho[l - 1] * (1.0 - RHO_TIE_GAP))
    return rho


def initial_state(
    panel: NetworkPanel,
    cfg: PriorConfig,
    rng: RngStream,
) -> tuple[RegimeParams, ShrinkageState, AugmentedState]:
    """
    Starting point of the sampler.

    s by density quantiles; gamma entries N(0, 0.01); tau, lambda and w at
    prior means (w given lambda); phi uniform; rho at descending prior
    quantiles; Xi rows at the Dirichlet means; d = 0 and omega at E[PG(1, 0)].
    """
    R, L = cfg.rank, cfg.n_regimes
    dims = panel.mode_sizes
    marginals = [
        ParafacMarginals([INIT_GAMMA_SD * rng.normal((n, R)) for n in dims])
        for _ in range(L)
    ]
    params = RegimeParams(
        marginals=marginals,
        rho=ordered_rho(cfg),
        xi=cfg.c / cfg.c.sum(axis=1, keepdims=True),
    )
    lam = cfg.a_lambda / cfg.b_lambda
    shrink = ShrinkageState(
        tau=cfg.a_tau / float(cfg.b_tau),
        psi=np.ones(R),
        w=np.broadcast_to(2.0 / lam**2, (N_MODES, R, L)).copy(),
        lam=lam,
    )
    aug = AugmentedState(
        s=density_regimes(panel, L),
        d=np.zeros(panel.x.shape, dtype=np.uint8),
        omega=np.full(panel.x.shape, 0.25),
    )
    return params, shrink, aug
