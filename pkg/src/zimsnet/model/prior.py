"""Log-densities of the hierarchical prior."""

from __future__ import annotations

import math

import numpy as np
from scipy import special, stats

from .config import PriorConfig
from .state import RegimeParams, ShrinkageState

LOG_2PI = math.log(2.0 * math.pi)


def _dirichlet_logpdf(x: np.ndarray, alpha: np.ndarray) -> float:
    if x.size == 1:
        return 0.0 if math.isclose(float(x[0]), 1.0) else -math.inf
    if np.any(x <= 0) or not math.isclose(float(x.sum()), 1.0, abs_tol=1e-10):
        return -math.inf
    norm = special.gammaln(alpha.sum()) - special.gammaln(alpha).sum()
    return float(norm + np.sum((alpha - 1.0) * np.log(x)))


def log_prior_blocks(params: RegimeParams, shrink: ShrinkageState, cfg: PriorConfig) -> dict[str, float]:
    """
    Per-block prior log-densities.

    Keys: gamma, tau, phi, w, lambda, rho, xi. Out-of-support values give -inf.
    """
    blocks: dict[str, float] = {}

    if not shrink.is_positive():
        return {k: -math.inf for k in ("gamma", "tau", "phi", "w", "lambda", "rho", "xi")}

    var = shrink.prior_variances()  # (4, R, L)
    gamma_lp = 0.0
    for l, m in enumerate(params.marginals):
        for h, f in enumerate(m.factors):
            n_h = f.shape[0]
            v = var[h, :, l]
            sq = np.einsum("ir,ir->r", f, f)
            gamma_lp += float(np.sum(-0.5 * n_h * (LOG_2PI + np.log(v)) - 0.5 * sq / v))
    blocks["gamma"] = gamma_lp

    blocks["tau"] = float(stats.gamma.logpdf(shrink.tau, cfg.a_tau, scale=1.0 / cfg.b_tau))
    blocks["phi"] = _dirichlet_logpdf(shrink.phi, np.full(cfg.rank, float(cfg.alpha)))

    rate_w = 0.5 * shrink.lam**2  # (L,)
    blocks["w"] = float(np.sum(np.log(rate_w)[None, None, :] - rate_w[None, None, :] * shrink.w))
    blocks["lambda"] = float(np.sum(stats.gamma.logpdf(shrink.lam, cfg.a_lambda, scale=1.0 / cfg.b_lambda)))

    rho = params.rho
    if np.any(rho <= 0) or np.any(rho >= 1):
        blocks["rho"] = -math.inf
    else:
        blocks["rho"] = float(np.sum(stats.beta.logpdf(rho, cfg.a_rho, cfg.b_rho)))

    blocks["xi"] = float(sum(_dirichlet_logpdf(params.xi[l], cfg.c[l]) for l in range(cfg.n_regimes)))
    return blocks


def log_prior(params: RegimeParams, shrink: ShrinkageState, cfg: PriorConfig) -> float:
    """Sum of the prior log-densities of all parameter blocks."""
    return float(sum(log_prior_blocks(params, shrink, cfg).values()))
