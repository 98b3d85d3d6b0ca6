"""Synthetic panels from the generative model with known truth."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np
from scipy.special import expit

from zimsnet.distributions import RngStream
from zimsnet.errors import ArgumentError
from zimsnet.model import NetworkPanel, PriorConfig, RegimeParams, ShrinkageState, path_predictor
from zimsnet.pooled import PooledParams

from .prior import draw_prior_state, sample_markov_path, stationary_distribution

logger = logging.getLogger(__name__)

InitialLaw = Literal["stationary", "uniform"]
TruthSource = Union[PriorConfig, RegimeParams, PooledParams]


@dataclass(slots=True)
class SimTruth:
    """
    Everything used to generate a panel.

    shrink is None when the parameters were supplied rather than drawn, and
    pooled carries the PooledParams when the truth is a pooled model.
    """

    params: RegimeParams
    shrink: Optional[ShrinkageState]
    s: np.ndarray
    d: np.ndarray
    seed: int
    pooled: Optional[PooledParams] = None


def standard_covariates(periods: int, n_covariates: int, rng: RngStream) -> np.ndarray:
    """Intercept in column 0, standard normals elsewhere, shape (T, Q)."""
    z = np.ones((periods, n_covariates))
    if n_covariates > 1:
        z[:, 1:] = rng.normal((periods, n_covariates - 1))
    return z


def simulate_edges(
    params: RegimeParams,
    s: np.ndarray,
    z: np.ndarray,
    edge_dims: tuple[int, int, int],
    rng: RngStream,
    *,
    d: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    d ~ Bern(rho_{s_t}) (unless given), x = 0 where d = 1 and Bern(sigma(z_t' g)) otherwise.

    Returns (x, d) as uint8 arrays of shape (I, J, K, T).
    """
    s = np.asarray(s, dtype=np.int64)
    shape = (*edge_dims, s.size)
    gen = rng.generator
    if d is None:
        d = (gen.random(shape) < params.rho[s]).astype(np.uint8)
    shell = NetworkPanel(np.zeros(shape, dtype=np.uint8), z)
    eta = path_predictor(shell, params, s)
    slab = (gen.random(shape) < expit(eta)).astype(np.uint8)
    x = np.where(d == 1, 0, slab).astype(np.uint8)
    return x, np.asarray(d, dtype=np.uint8)


def simulate_panel(
    dims: Sequence[int],
    n_regimes: int,
    rank: int,
    source: TruthSource,
    seed: int,
    *,
    initial: InitialLaw = "stationary",
    z: Optional[np.ndarray] = None,
) -> tuple[NetworkPanel, SimTruth]:
    """
    Generate a NetworkPanel of shape (I, J, K, T) with Q covariates.

    source is a PriorConfig (parameters drawn from the prior, regimes ordered)
    or explicit RegimeParams / PooledParams. The first regime is drawn from
    the stationary law of xi unless initial="uniform".
    """
    if len(dims) != 5:
        raise ArgumentError("dims must be (I, J, K, T, Q)", details={"dims": list(dims)})
    I, J, K, T, Q = (int(v) for v in dims)
    if min(I, J, K, T, Q) < 1:
        raise ArgumentError("all dimensions must be positive", details={"dims": [I, J, K, T, Q]})
    rng = RngStream(seed)
    param_rng, path_rng, cov_rng, edge_rng = rng.spawn(4)

    shrink: Optional[ShrinkageState] = None
    pooled: Optional[PooledParams] = None
    if isinstance(source, PriorConfig):
        if source.rank != rank or source.n_regimes != n_regimes:
            raise ArgumentError(
                "prior config disagrees with the requested rank or regimes",
                details={"rank": rank, "n_regimes": n_regimes, "config": source.to_dict()},
            )
        params, shrink = draw_prior_state((I, J, K, Q), source, param_rng)
    elif isinstance(source, PooledParams):
        pooled = source
        params = source.to_regime_params((I, J, K))
    else:
        params = source
        if params.rank != rank:
            raise ArgumentError("truth rank disagrees with the requested rank", details={"rank": rank, "truth_rank": params.rank})
    if params.n_regimes != n_regimes or params.marginals[0].dims != (I, J, K, Q):
        raise ArgumentError(
            "truth parameters disagree with the requested dimensions",
            details={"dims": [I, J, K, Q], "marginal_dims": list(params.marginals[0].dims), "L": params.n_regimes},
        )

    if initial == "stationary":
        p0 = stationary_distribution(params.xi)
    elif initial == "uniform":
        p0 = None
    else:
        raise ArgumentError("initial must be 'stationary' or 'uniform'", details={"initial": initial})
    s = sample_markov_path(params.xi, T, path_rng, p0)

    if z is None:
        z = standard_covariates(T, Q, cov_rng)
    x, d = simulate_edges(params, s, z, (I, J, K), edge_rng)
    logger.debug("simulated panel %s with density %.3f", (I, J, K, T), float(x.mean()))
    truth = SimTruth(params=params, shrink=shrink, s=s, d=d, seed=int(seed), pooled=pooled)
    return NetworkPanel(x, z), truth
