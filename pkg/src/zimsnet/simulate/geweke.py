"""
Joint-distribution test of the samplers.

Collection A draws (theta, s) independently from the prior. Collection B
alternates one Gibbs sweep with regenerating the data given the current
state. Both target the same joint law, so the moments of every test function
must agree up to Monte Carlo error.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Literal, Optional, Sequence

import numpy as np

from zimsnet.distributions import RngStream
from zimsnet.gibbs import ChainConfig, Draw, GibbsSampler, monte_carlo_se
from zimsnet.model import AugmentedState, NetworkPanel, PriorConfig
from zimsnet.pooled import PooledDraw, PooledGibbsSampler

from .panel import simulate_edges, standard_covariates
from .prior import draw_pooled_prior, draw_prior_state, sample_markov_path

logger = logging.getLogger(__name__)

ModelKind = Literal["unrestricted", "pooled"]


@dataclass(frozen=True, slots=True)
class GewekeStatistic:
    name: str
    forward_mean: float
    forward_se: float
    gibbs_mean: float
    gibbs_se: float

    @property
    def z(self) -> float:
        se = math.hypot(self.forward_se, self.gibbs_se)
        diff = self.forward_mean - self.gibbs_mean
        if se == 0.0:
            return 0.0 if diff == 0.0 else math.inf
        return diff / se


@dataclass(slots=True)
class GewekeResult:
    statistics: list[GewekeStatistic]
    sweeps: int
    dims: tuple[int, ...]
    model: str = "unrestricted"
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def max_abs_z(self) -> float:
        return max(abs(s.z) for s in self.statistics)

    def by_name(self, name: str) -> GewekeStatistic:
        for s in self.statistics:
            if s.name == name:
                return s
        raise KeyError(name)

    def failures(self, threshold: float = 3.0) -> list[GewekeStatistic]:
        return [s for s in self.statistics if abs(s.z) > threshold]


def geweke_functions(draw: Any) -> dict[str, float]:
    """Scalar parameters, the first entry of every marginal of regime 0, and squares of all."""
    base = dict(draw.scalars())
    if isinstance(draw, Draw):
        for h, f in enumerate(draw.params.marginals[0].factors):
            base[f"gamma[{h}]"] = float(f[0, 0])
    out = dict(base)
    for name, v in base.items():
        out[f"{name}^2"] = v * v
    return out


def _forward_draw(
    kind: ModelKind,
    mode_sizes: tuple[int, int, int, int],
    periods: int,
    cfg: PriorConfig,
    rng: RngStream,
) -> Any:
    if kind == "pooled":
        params = draw_pooled_prior(mode_sizes[3], cfg, rng)
        return PooledDraw(iteration=0, params=params, s=sample_markov_path(params.xi, periods, rng))
    params, shrink = draw_prior_state(mode_sizes, cfg, rng)
    return Draw(iteration=0, params=params, shrink=shrink, s=sample_markov_path(params.xi, periods, rng))


def _regime_view(draw: Any, edge_dims: tuple[int, int, int]):
    if isinstance(draw, PooledDraw):
        return draw.params.to_regime_params(edge_dims)
    return draw.params


def _summaries(rows: list[dict[str, float]], names: Sequence[str], use_ess: bool) -> dict[str, tuple[float, float]]:
    out = {}
    for name in names:
        col = np.array([r[name] for r in rows])
        if use_ess:
            se = monte_carlo_se(col)
        else:
            se = float(col.std(ddof=1) / math.sqrt(col.size))
        out[name] = (float(col.mean()), se)
    return out


def geweke_pair(
    dims: Sequence[int],
    cfg: PriorConfig,
    sweeps: int,
    seed: int,
    *,
    model: ModelKind = "unrestricted",
    sampler_cls: Optional[type[GibbsSampler]] = None,
    forward_draws: Optional[int] = None,
    hmc_step: float = 0.1,
    hmc_nleap: int = 10,
) -> GewekeResult:
    """
    Compare marginal-conditional and successive-conditional draws.

    dims is (I, J, K, T, Q). Covariates are drawn once and held fixed. The
    HMC step is not adapted so that every sweep uses the same kernel.
    """
    I, J, K, T, Q = (int(v) for v in dims)
    edge_dims = (I, J, K)
    mode_sizes = (I, J, K, Q)
    if sampler_cls is None:
        sampler_cls = PooledGibbsSampler if model == "pooled" else GibbsSampler
    n_forward = sweeps if forward_draws is None else int(forward_draws)

    root = RngStream(seed)
    cov_rng, fwd_rng, init_rng, data_rng = root.spawn(4)
    z = standard_covariates(T, Q, cov_rng)

    forward_rows = [geweke_functions(_forward_draw(model, mode_sizes, T, cfg, fwd_rng)) for _ in range(n_forward)]

    start = _forward_draw(model, mode_sizes, T, cfg, init_rng)
    x, d = simulate_edges(_regime_view(start, edge_dims), start.s, z, edge_dims, data_rng)
    panel = NetworkPanel(x, z)
    chain = ChainConfig(
        iterations=max(sweeps, 2),
        burn_in=0,
        seed=seed + 1,
        hmc_step=hmc_step,
        hmc_nleap=hmc_nleap,
        adapt_step=False,
    )
    sampler = sampler_cls(panel, cfg, chain)
    aug = AugmentedState(s=start.s, d=d, omega=np.full(x.shape, 0.25))
    if model == "pooled":
        sampler.set_state(start.params, aug)
    else:
        sampler.set_state(start.params, start.shrink, aug)

    gibbs_rows = []
    for it in range(sweeps):
        sampler.sweep(it)
        snap = sampler.snapshot(it)
        gibbs_rows.append(geweke_functions(snap))
        x, _ = simulate_edges(_regime_view(snap, edge_dims), sampler.aug.s, z, edge_dims, data_rng, d=sampler.aug.d)
        sampler.panel = NetworkPanel(x, z)
        if (it + 1) % 1000 == 0:
            logger.info("geweke sweep %d/%d", it + 1, sweeps)

    names = list(forward_rows[0].keys())
    fwd = _summaries(forward_rows, names, use_ess=False)
    gib = _summaries(gibbs_rows, names, use_ess=True)
    stats = [GewekeStatistic(n, fwd[n][0], fwd[n][1], gib[n][0], gib[n][1]) for n in names]
    return GewekeResult(
        statistics=stats,
        sweeps=sweeps,
        dims=(I, J, K, T, Q),
        model=model,
        extra={"hmc_acceptance": sampler.hmc_acceptance},
    )
