"""Zero-inflated logit edge probabilities, emissions and the augmented likelihood."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from scipy.special import expit, log_expit

from zimsnet.tensor import ParafacMarginals, parafac_last_mode_product

from .panel import NetworkPanel
from .state import AugmentedState, RegimeParams

LOG2 = math.log(2.0)


def edge_prob(x: int, rho: float, g: Sequence[float] | np.ndarray, z: Sequence[float] | np.ndarray) -> float:
    """
    p(x | rho, g, z) for a single edge.

    p(1) = (1 - rho) sigma(z'g); p(0) = rho + (1 - rho)(1 - sigma(z'g)).
    """
    eta = float(np.dot(np.asarray(z, dtype=np.float64), np.asarray(g, dtype=np.float64)))
    p1 = (1.0 - rho) * float(expit(eta))
    if x == 1:
        return p1
    return rho + (1.0 - rho) * float(expit(-eta))


def log_edge_prob(x: np.ndarray, rho: float, eta: np.ndarray) -> np.ndarray:
    """Elementwise log p(x | rho, eta) in log space (safe for large |eta| and rho in {0, 1})."""
    with np.errstate(divide="ignore"):
        log_rho = np.log(rho)
        log_keep = np.log1p(-rho)
    log_one = log_keep + log_expit(eta)
    log_zero = np.logaddexp(log_rho, log_keep + log_expit(-eta))
    return np.where(x == 1, log_one, log_zero)


def linear_predictor(marginals: ParafacMarginals, z: np.ndarray) -> np.ndarray:
    """z_t' g_{ijk} for every edge and period, shape (I, J, K, T)."""
    return parafac_last_mode_product(marginals, z)


def regime_predictors(panel: NetworkPanel, params: RegimeParams) -> np.ndarray:
    """Linear predictors under every regime, shape (L, I, J, K, T)."""
    return np.stack([linear_predictor(m, panel.z) for m in params.marginals])


def path_predictor(panel: NetworkPanel, params: RegimeParams, s: np.ndarray) -> np.ndarray:
    """Linear predictors under the regime path s, shape (I, J, K, T)."""
    s = np.asarray(s, dtype=np.int64)
    eta = np.empty(panel.x.shape)
    for l, m in enumerate(params.marginals):
        idx = np.flatnonzero(s == l)
        if idx.size:
            eta[..., idx] = linear_predictor(m, panel.z[idx])
    return eta


def log_emissions(panel: NetworkPanel, params: RegimeParams, predictors: Optional[np.ndarray] = None) -> np.ndarray:
    """
    log p(X_t | s_t = l, rho_l, G_l) for every t and l, shape (T, L).

    predictors may carry precomputed regime_predictors output.
    """
    if predictors is None:
        predictors = regime_predictors(panel, params)
    out = np.empty((panel.T, params.n_regimes))
    for l in range(params.n_regimes):
        logp = log_edge_prob(panel.x, float(params.rho[l]), predictors[l])
        out[:, l] = logp.reshape(-1, panel.T).sum(axis=0)
    return out


def log_emission(panel: NetworkPanel, t: int, l: int, params: RegimeParams) -> float:
    """Sum over edges of log edge_prob for period t under regime l."""
    eta = linear_predictor(params.marginals[l], panel.z[t:t + 1])[..., 0]
    return float(np.sum(log_edge_prob(panel.x[..., t], float(params.rho[l]), eta)))


def transition_counts(s: np.ndarray, n_regimes: int) -> np.ndarray:
    """N[g, l] = #{t >= 1 : s_{t-1} = g, s_t = l}."""
    s = np.asarray(s, dtype=np.int64)
    counts = np.zeros((n_regimes, n_regimes), dtype=np.int64)
    if s.size > 1:
        np.add.at(counts, (s[:-1], s[1:]), 1)
    return counts


def allocation_counts(d: np.ndarray, s: np.ndarray, n_regimes: int) -> tuple[np.ndarray, np.ndarray]:
    """(N1, N0): counts of d = 1 and d = 0 over periods assigned to each regime."""
    per_t = d.reshape(-1, d.shape[-1]).sum(axis=0).astype(np.int64)
    edges = int(np.prod(d.shape[:-1]))
    s = np.asarray(s, dtype=np.int64)
    n1 = np.bincount(s, weights=per_t, minlength=n_regimes).astype(np.int64)
    periods = np.bincount(s, minlength=n_regimes).astype(np.int64)
    return n1, periods * edges - n1


def complete_data_loglik(
    panel: NetworkPanel,
    aug: AugmentedState,
    params: RegimeParams,
    predictor: Optional[np.ndarray] = None,
) -> float:
    """
    Log of the augmented likelihood L(X, D, Omega, s | theta).

    Per edge: d log rho + (1 - d)[log(1 - rho) - log 2 - omega eta^2 / 2 + kappa eta],
    plus sum_{g,l} N_gl(s) log xi_{g,l}. The Polya-Gamma prior density of
    omega and the initial-state probability are parameter-free and omitted.

    Raises:
        InvariantViolationError: if d = 1 where x = 1.
    """
    aug.check_allocations(panel.x)
    if predictor is None:
        predictor = path_predictor(panel, params, aug.s)

    rho_t = params.rho[aug.s]  # (T,)
    kappa = aug.kappa(panel.x)
    quad = -0.5 * aug.omega * predictor**2 + kappa * predictor

    with np.errstate(divide="ignore"):
        log_rho = np.log(rho_t)
        log_keep = np.log1p(-rho_t)
    point = np.where(aug.d == 1, log_rho, 0.0)
    slab = np.where(aug.d == 0, log_keep - LOG2 + quad, 0.0)
    edges = float(np.sum(point) + np.sum(slab))

    counts = transition_counts(aug.s, params.n_regimes)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_xi = np.log(params.xi)
        trans = float(np.sum(np.where(counts > 0, counts * log_xi, 0.0)))
    return edges + trans
