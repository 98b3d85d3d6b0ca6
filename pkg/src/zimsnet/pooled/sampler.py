"""Reduced Gibbs sampler of the pooled model."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from zimsnet.distributions import GigParams, HmcStep, RngStream, sample_gig
from zimsnet.errors import NumericalError
from zimsnet.gibbs import (
    ChainConfig,
    ChainResult,
    GaussianConditional,
    GibbsSampler,
    density_regimes,
    ordered_rho,
    relabel_permutation,
    sample_lambda,
)
from zimsnet.model import AugmentedState, NetworkPanel, PriorConfig

from .state import PooledParams, pooled_edge_probability, pooled_predictors

INIT_G_SD = 0.1


@dataclass(slots=True)
class PooledDraw:
    iteration: int
    params: PooledParams
    s: np.ndarray

    def scalars(self) -> dict[str, float]:
        out: dict[str, float] = {"tau": self.params.tau}
        for l in range(self.params.n_regimes):
            out[f"rho[{l}]"] = float(self.params.rho[l])
            out[f"lambda[{l}]"] = float(self.params.lam[l])
            out[f"w[{l}]"] = float(self.params.w[l])
            out[f"occupancy[{l}]"] = float(np.mean(self.s == l))
            for q, v in enumerate(self.params.g[l]):
                out[f"g[{l},{q}]"] = float(v)
        return out

    def edge_probability(self, panel: NetworkPanel) -> np.ndarray:
        return pooled_edge_probability(panel, self.params, self.s)


def pooled_g_conditional(
    l: int,
    panel: NetworkPanel,
    aug: AugmentedState,
    params: PooledParams,
    *,
    prior_mean: Optional[np.ndarray] = None,
    omega_eff: Optional[np.ndarray] = None,
    kappa: Optional[np.ndarray] = None,
) -> GaussianConditional:
    """
    g_l | . ~ N with precision I / (tau w_l) + sum_{t in T_l} (sum_ijk omega) z_t z_t'
    and linear term prior_mean / (tau w_l) + sum_{t in T_l} (sum_ijk kappa) z_t.
    """
    Q = params.n_covariates
    var = params.tau * float(params.w[l])
    mean = np.zeros(Q) if prior_mean is None else np.asarray(prior_mean, dtype=np.float64)
    if omega_eff is None:
        omega_eff = aug.effective_omega()
    if kappa is None:
        kappa = aug.kappa(panel.x)
    idx = np.flatnonzero(aug.s == l)
    z = panel.z[idx]
    om_t = omega_eff[..., idx].reshape(-1, idx.size).sum(axis=0)
    kap_t = kappa[..., idx].reshape(-1, idx.size).sum(axis=0)
    prec = (z * om_t[:, None]).T @ z + np.eye(Q) / var
    lin = z.T @ kap_t + mean / var
    return GaussianConditional(prec, lin)


def sample_g_pooled(
    l: int,
    panel: NetworkPanel,
    aug: AugmentedState,
    params: PooledParams,
    rng: RngStream,
    *,
    jitter: float = 1e-10,
    prior_mean: Optional[np.ndarray] = None,
    omega_eff: Optional[np.ndarray] = None,
    kappa: Optional[np.ndarray] = None,
) -> np.ndarray:
    cond = pooled_g_conditional(l, panel, aug, params, prior_mean=prior_mean, omega_eff=omega_eff, kappa=kappa)
    try:
        draw = cond.sample(rng, jitter)
    except NumericalError as exc:
        exc.details.update({"regime": l})
        raise
    params.g[l] = draw
    return draw


def pooled_tau_params(g: np.ndarray, w: np.ndarray, cfg: PriorConfig) -> GigParams:
    """tau | g, w ~ GIG(2 b_tau, sum_l g_l'g_l / w_l, a_tau - Q L / 2)."""
    L, Q = g.shape
    b = float(np.sum(np.einsum("lq,lq->l", g, g) / w))
    return GigParams(a=2.0 * float(cfg.b_tau), b=b, p=cfg.a_tau - 0.5 * Q * L)


def pooled_w_params(g: np.ndarray, tau: float, lam: np.ndarray) -> list[GigParams]:
    """w_l | g_l, tau, lambda_l ~ GIG(lambda_l^2, g_l'g_l / tau, 1 - Q / 2)."""
    Q = g.shape[1]
    sq = np.einsum("lq,lq->l", g, g)
    return [GigParams(a=float(lam[l]) ** 2, b=float(sq[l]) / tau, p=1.0 - 0.5 * Q) for l in range(g.shape[0])]


def sample_variances_pooled(
    g: np.ndarray,
    w: np.ndarray,
    lam: np.ndarray,
    cfg: PriorConfig,
    step: float,
    nleap: int,
    rng: RngStream,
) -> tuple[float, np.ndarray, np.ndarray, list[HmcStep]]:
    """tau, then every w_l, then lambda_l by HMC given w_l (exponent a_lambda + 2)."""
    tau = sample_gig(pooled_tau_params(g, w, cfg), rng)
    new_w = np.array([sample_gig(p, rng) for p in pooled_w_params(g, tau, lam)])
    new_lam, steps = sample_lambda(new_w[None, :], lam, cfg, step, nleap, rng, n_local=1)
    return tau, new_w, new_lam, steps


def relabel_pooled(params: PooledParams, aug: AugmentedState) -> tuple[PooledParams, AugmentedState, bool]:
    perm = relabel_permutation(params.rho)
    if np.array_equal(perm, np.arange(perm.size)):
        return params, aug, False
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.size)
    new = PooledParams(
        g=params.g[perm],
        w=params.w[perm],
        tau=params.tau,
        lam=params.lam[perm],
        rho=params.rho[perm],
        xi=params.xi[np.ix_(perm, perm)],
    )
    return new, AugmentedState(s=inverse[aug.s], d=aug.d, omega=aug.omega), True


def initial_pooled_state(
    panel: NetworkPanel,
    cfg: PriorConfig,
    rng: RngStream,
) -> tuple[PooledParams, AugmentedState]:
    L = cfg.n_regimes
    lam = cfg.a_lambda / cfg.b_lambda
    params = PooledParams(
        g=INIT_G_SD * rng.normal((L, panel.Q)),
        w=2.0 / lam**2,
        tau=cfg.a_tau / float(cfg.b_tau),
        lam=lam,
        rho=ordered_rho(cfg),
        xi=cfg.c / cfg.c.sum(axis=1, keepdims=True),
    )
    aug = AugmentedState(
        s=density_regimes(panel, L),
        d=np.zeros(panel.x.shape, dtype=np.uint8),
        omega=np.full(panel.x.shape, 0.25),
    )
    return params, aug


class PooledGibbsSampler(GibbsSampler):
    """
    Sampler of the pooled model.

    Blocks latent and switching are inherited; the variance and marginal
    blocks are replaced by the tau/w/lambda and g_l updates.
    """

    def init_state(self, rng: RngStream) -> None:
        self.params, self.aug = initial_pooled_state(self.panel, self.prior, rng)
        self.shrink = None

    def set_state(self, params: PooledParams, aug: AugmentedState) -> None:  # type: ignore[override]
        self.params, self.aug = params, aug

    def snapshot(self, iteration: int) -> PooledDraw:  # type: ignore[override]
        return PooledDraw(iteration=iteration, params=self.params.copy(), s=self.aug.s.copy())

    def predictors(self) -> np.ndarray:
        return pooled_predictors(self.panel, self.params)

    def update_variances(self, rng: RngStream) -> None:
        tau, w, lam, steps = sample_variances_pooled(
            self.params.g, self.params.w, self.params.lam, self.prior,
            self.adapter.step, self.chain.hmc_nleap, rng,
        )
        self.record_hmc(steps)
        self.params.tau, self.params.w, self.params.lam = tau, w, lam

    def update_marginals(self, rng: RngStream) -> None:
        omega_eff = self.aug.effective_omega()
        kappa = self.aug.kappa(self.panel.x)
        for l in range(self.prior.n_regimes):
            sample_g_pooled(
                l, self.panel, self.aug, self.params, rng,
                jitter=self.chain.jitter, omega_eff=omega_eff, kappa=kappa,
            )

    def update_relabel(self, rng: RngStream) -> None:
        self.params, self.aug, changed = relabel_pooled(self.params, self.aug)
        self.relabel_count += int(changed)


def run_pooled_chain(panel: NetworkPanel, prior: PriorConfig, chain: ChainConfig) -> ChainResult:
    """Run the pooled sampler; draws are PooledDraw records."""
    return PooledGibbsSampler(panel, prior, chain).run()
