"""Pooled model state: one coefficient vector per regime shared by every edge."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from zimsnet.errors import DimensionError
from zimsnet.model import NetworkPanel, RegimeParams
from zimsnet.tensor import ParafacMarginals


@dataclass(slots=True)
class PooledParams:
    """
    Attributes:
        g: coefficients, shape (L, Q); row l is g_l.
        w: local variances w_l, shape (L,).
        tau: global variance.
        lam: lambda_l, shape (L,).
        rho: zero-inflation probabilities, descending, shape (L,).
        xi: L x L transition matrix.
    """

    g: np.ndarray
    w: np.ndarray
    tau: float
    lam: np.ndarray
    rho: np.ndarray
    xi: np.ndarray

    def __post_init__(self) -> None:
        self.g = np.atleast_2d(np.asarray(self.g, dtype=np.float64))
        self.w = np.asarray(self.w, dtype=np.float64)
        self.tau = float(self.tau)
        self.lam = np.asarray(self.lam, dtype=np.float64)
        self.rho = np.asarray(self.rho, dtype=np.float64)
        self.xi = np.asarray(self.xi, dtype=np.float64)
        L = self.g.shape[0]
        if self.w.shape != (L,) or self.lam.shape != (L,) or self.rho.shape != (L,) or self.xi.shape != (L, L):
            raise DimensionError(
                "pooled parameters disagree on the number of regimes",
                details={"g": self.g.shape, "w": self.w.shape, "rho": self.rho.shape, "xi": self.xi.shape},
            )

    @property
    def n_regimes(self) -> int:
        return int(self.g.shape[0])

    @property
    def n_covariates(self) -> int:
        return int(self.g.shape[1])

    def is_positive(self) -> bool:
        return bool(self.tau > 0 and np.all(self.w > 0) and np.all(self.lam > 0))

    def copy(self) -> PooledParams:
        return PooledParams(
            g=self.g.copy(),
            w=self.w.copy(),
            tau=self.tau,
            lam=self.lam.copy(),
            rho=self.rho.copy(),
            xi=self.xi.copy(),
        )

    def to_regime_params(self, edge_dims: tuple[int, int, int]) -> RegimeParams:
        """
        The same model as an unrestricted one: G_l = H x g_l with H all ones,
        i.e. rank-one marginals (1_I, 1_J, 1_K, g_l).
        """
        I, J, K = edge_dims
        marginals = [
            ParafacMarginals([np.ones((I, 1)), np.ones((J, 1)), np.ones((K, 1)), gl[:, None]])
            for gl in self.g
        ]
        return RegimeParams(marginals=marginals, rho=self.rho.copy(), xi=self.xi.copy())


def pooled_predictors(panel: NetworkPanel, params: PooledParams) -> np.ndarray:
    """z_t' g_l broadcast to every edge, shape (L, I, J, K, T)."""
    per_t = params.g @ panel.z.T  # (L, T)
    shape = (params.n_regimes, panel.I, panel.J, panel.K, panel.T)
    return np.broadcast_to(per_t[:, None, None, None, :], shape)


def pooled_path_predictor(panel: NetworkPanel, params: PooledParams, s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.int64)
    per_t = np.einsum("tq,tq->t", panel.z, params.g[s])
    return np.broadcast_to(per_t, panel.x.shape).copy()


def pooled_edge_probability(panel: NetworkPanel, params: PooledParams, s: np.ndarray) -> np.ndarray:
    """p(x = 1) = (1 - rho_{s_t}) sigma(z_t' g_{s_t}), shape (I, J, K, T)."""
    s = np.asarray(s, dtype=np.int64)
    return (1.0 - params.rho[s]) * expit(pooled_path_predictor(panel, params, s))
