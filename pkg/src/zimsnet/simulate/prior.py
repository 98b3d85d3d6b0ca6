"""Draws from the hierarchical prior."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from zimsnet.distributions import RngStream, sample_beta, sample_dirichlet, sample_gamma
from zimsnet.errors import ArgumentError
from zimsnet.gibbs import apply_permutation, relabel_permutation
from zimsnet.model import N_MODES, AugmentedState, PriorConfig, RegimeParams, ShrinkageState
from zimsnet.pooled import PooledParams, relabel_pooled
from zimsnet.tensor import ParafacMarginals


def _empty_aug() -> AugmentedState:
    return AugmentedState(s=np.zeros(0, dtype=np.int64), d=np.zeros(0, dtype=np.uint8), omega=np.zeros(0))


def _switching_prior(cfg: PriorConfig, rng: RngStream) -> tuple[np.ndarray, np.ndarray]:
    L = cfg.n_regimes
    rho = np.array([float(sample_beta(cfg.a_rho[l], cfg.b_rho[l], rng)) for l in range(L)])
    xi = np.vstack([sample_dirichlet(cfg.c[l], rng) for l in range(L)])
    return rho, xi


def draw_prior_state(
    mode_sizes: Sequence[int],
    cfg: PriorConfig,
    rng: RngStream,
    *,
    ordered: bool = True,
) -> tuple[RegimeParams, ShrinkageState]:
    """
    One joint draw of (RegimeParams, ShrinkageState) from the prior.

    psi is returned as tau * phi so that phi = psi / sum(psi). With ordered,
    regimes are relabeled so rho is descending.
    """
    if len(mode_sizes) != N_MODES:
        raise ArgumentError("mode sizes must be (I, J, K, Q)", details={"mode_sizes": list(mode_sizes)})
    R, L = cfg.rank, cfg.n_regimes
    tau = float(sample_gamma(cfg.a_tau, cfg.b_tau, rng))
    phi = np.ones(1) if R == 1 else sample_dirichlet(np.full(R, float(cfg.alpha)), rng)
    lam = np.array([float(sample_gamma(cfg.a_lambda[l], cfg.b_lambda[l], rng)) for l in range(L)])
    w = np.empty((N_MODES, R, L))
    for l in range(L):
        w[:, :, l] = sample_gamma(1.0, 0.5 * lam[l] ** 2, rng, size=(N_MODES, R))
    marginals = []
    for l in range(L):
        factors = []
        for h, n in enumerate(mode_sizes):
            sd = np.sqrt(tau * phi * w[h, :, l])
            factors.append(rng.normal((int(n), R)) * sd[None, :])
        marginals.append(ParafacMarginals(factors))
    rho, xi = _switching_prior(cfg, rng)
    params = RegimeParams(marginals=marginals, rho=rho, xi=xi)
    shrink = ShrinkageState(tau=tau, psi=tau * phi, w=w, lam=lam)
    if ordered:
        perm = relabel_permutation(params.rho)
        params, shrink, _ = apply_permutation(perm, params, shrink, _empty_aug())
    return params, shrink


def draw_pooled_prior(
    n_covariates: int,
    cfg: PriorConfig,
    rng: RngStream,
    *,
    ordered: bool = True,
) -> PooledParams:
    """One prior draw of the pooled model: g_l ~ N(0, tau w_l I_Q)."""
    L = cfg.n_regimes
    tau = float(sample_gamma(cfg.a_tau, cfg.b_tau, rng))
    lam = np.array([float(sample_gamma(cfg.a_lambda[l], cfg.b_lambda[l], rng)) for l in range(L)])
    w = np.array([float(sample_gamma(1.0, 0.5 * lam[l] ** 2, rng)) for l in range(L)])
    g = rng.normal((L, int(n_covariates))) * np.sqrt(tau * w)[:, None]
    rho, xi = _switching_prior(cfg, rng)
    params = PooledParams(g=g, w=w, tau=tau, lam=lam, rho=rho, xi=xi)
    if ordered:
        params, _, _ = relabel_pooled(params, _empty_aug())
    return params


def sample_markov_path(
    xi: np.ndarray,
    periods: int,
    rng: RngStream,
    initial: Optional[np.ndarray] = None,
) -> np.ndarray:
    """s_0 ~ initial (uniform by default), then s_t ~ xi[s_{t-1}]."""
    L = xi.shape[0]
    p0 = np.full(L, 1.0 / L) if initial is None else np.asarray(initial, dtype=np.float64)
    gen = rng.generator
    s = np.empty(periods, dtype=np.int64)
    s[0] = gen.choice(L, p=p0)
    for t in range(1, periods):
        s[t] = gen.choice(L, p=xi[s[t - 1]])
    return s


def stationary_distribution(xi: np.ndarray) -> np.ndarray:
    """pi with pi xi = pi and sum(pi) = 1, by least squares on the stacked system."""
    L = xi.shape[0]
    a = np.vstack([xi.T - np.eye(L), np.ones((1, L))])
    b = np.zeros(L + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(a, b, rcond=None)
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()
