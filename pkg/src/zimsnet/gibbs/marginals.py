"""
Block (III): Gaussian full conditionals of the PARAFAC marginals.

Precision and linear term for gamma_{h,l}^{(r)} are

    P = I / (tau phi_r w_{h,r,l}) + sum_{t in T_l} A_t' diag(omega_t) A_t
    b = prior_mean / (tau phi_r w_{h,r,l}) + sum_{t in T_l} A_t' (kappa_t - diag(omega_t) gbar_t)

where A_t maps the marginal to vec of the rank-r contribution at time t and
gbar_t is the predictor of the other ranks. gamma_conditional contracts the
Kronecker structure directly; gamma_conditional_dense materializes A_t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from zimsnet.distributions import RngStream
from zimsnet.errors import NumericalError
from zimsnet.model import AugmentedState, NetworkPanel, RegimeParams, ShrinkageState, linear_predictor

logger = logging.getLogger(__name__)

MAX_JITTER = 1e-6

_MODE_SUBSCRIPTS = {
    0: "ijkt,jk,t->i",
    1: "ijkt,ik,t->j",
    2: "ijkt,ij,t->k",
}


@dataclass(slots=True)
class GaussianConditional:
    """N(P^{-1} b, P^{-1}) in canonical form."""

    precision: np.ndarray
    linear: np.ndarray
    diagonal: bool = False

    @property
    def dim(self) -> int:
        return int(self.linear.shape[0])

    def log_kernel(self, x: np.ndarray) -> float:
        """-x'Px/2 + b'x; differences equal log-density differences."""
        x = np.asarray(x, dtype=np.float64)
        return float(-0.5 * x @ self.precision @ x + self.linear @ x)

    def mean(self, jitter: float = 1e-10) -> np.ndarray:
        if self.diagonal:
            return self.linear / np.diagonal(self.precision)
        chol = self._factor(jitter)
        return linalg.cho_solve((chol, True), self.linear)

    def sample(self, rng: RngStream, jitter: float = 1e-10) -> np.ndarray:
        eps = rng.normal(self.dim)
        if self.diagonal:
            d = np.diagonal(self.precision)
            return self.linear / d + eps / np.sqrt(d)
        chol = self._factor(jitter)
        mean = linalg.cho_solve((chol, True), self.linear)
        return mean + linalg.solve_triangular(chol.T, eps, lower=False)

    def _factor(self, jitter: float) -> np.ndarray:
        """Lower Cholesky factor, retrying with jitter escalated tenfold up to MAX_JITTER."""
        eye = np.eye(self.dim)
        added = 0.0
        while True:
            try:
                return linalg.cholesky(self.precision + added * eye, lower=True)
            except linalg.LinAlgError as exc:
                if added >= MAX_JITTER:
                    raise NumericalError(
                        "posterior precision is not positive definite",
                        details={"jitter": added, "dim": self.dim},
                        cause=exc,
                    ) from exc
                added = jitter if added == 0.0 else min(added * 10.0, MAX_JITTER)
                logger.debug("Cholesky failed, retrying with jitter %g", added)


def _prior_terms(
    h: int,
    r: int,
    l: int,
    n_h: int,
    shrink: ShrinkageState,
    prior_mean: Optional[np.ndarray],
) -> tuple[float, np.ndarray]:
    var = shrink.tau * float(shrink.phi[r]) * float(shrink.w[h, r, l])
    mean = np.zeros(n_h) if prior_mean is None else np.asarray(prior_mean, dtype=np.float64)
    return 1.0 / var, mean / var


def _regime_slices(
    panel: NetworkPanel,
    aug: AugmentedState,
    l: int,
    omega_eff: Optional[np.ndarray],
    kappa: Optional[np.ndarray],
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    idx = np.flatnonzero(aug.s == l)
    if omega_eff is None:
        omega_eff = aug.effective_omega()
    if kappa is None:
        kappa = aug.kappa(panel.x)
    return idx, panel.z[idx], omega_eff[..., idx], kappa[..., idx]


def gamma_conditional(
    h: int,
    r: int,
    l: int,
    panel: NetworkPanel,
    aug: AugmentedState,
    params: RegimeParams,
    shrink: ShrinkageState,
    *,
    prior_mean: Optional[np.ndarray] = None,
    omega_eff: Optional[np.ndarray] = None,
    kappa: Optional[np.ndarray] = None,
) -> GaussianConditional:
    """
    Full conditional of gamma_{h,l}^{(r)} from structured contractions.

    Modes 0..2 give a diagonal precision; mode 3 (covariates) a dense Q x Q one.
    omega_eff and kappa may carry precomputed (1 - d) omega and kappa arrays.
    """
    factors = params.marginals[l].factors
    n_h = factors[h].shape[0]
    prior_prec, prior_lin = _prior_terms(h, r, l, n_h, shrink, prior_mean)
    idx, z, om, kap = _regime_slices(panel, aug, l, omega_eff, kappa)

    if idx.size == 0:
        return GaussianConditional(np.eye(n_h) * prior_prec, prior_lin, diagonal=True)

    g0, g1, g2, g3 = (f[:, r] for f in factors)
    c = z @ g3
    outer3 = np.einsum("i,j,k->ijk", g0, g1, g2)
    eta = linear_predictor(params.marginals[l], z)
    rest = eta - outer3[..., None] * c
    resid = kap - om * rest

    if h < 3:
        others = [g for m, g in enumerate((g0, g1, g2)) if m != h]
        u = np.outer(others[0], others[1])
        subs = _MODE_SUBSCRIPTS[h]
        diag = np.einsum(subs, om, u * u, c * c) + prior_prec
        lin = np.einsum(subs, resid, u, c) + prior_lin
        return GaussianConditional(np.diag(diag), lin, diagonal=True)

    weights = np.einsum("ijkt,ijk->t", om, outer3 * outer3)
    prec = (z * weights[:, None]).T @ z + prior_prec * np.eye(n_h)
    lin = z.T @ np.einsum("ijkt,ijk->t", resid, outer3) + prior_lin
    return GaussianConditional(prec, lin)


def design_matrix(h: int, r: int, factors: list[np.ndarray], z_t: np.ndarray) -> np.ndarray:
    """Dense A_t of shape (I J K, n_h) mapping gamma_h^{(r)} to vec of the rank-r term at t."""
    g0, g1, g2, g3 = (f[:, r, None] for f in factors)
    I, J, K = g0.shape[0], g1.shape[0], g2.shape[0]
    c = float(z_t @ g3[:, 0])
    if h == 0:
        return c * np.kron(np.kron(g2, g1), np.eye(I))
    if h == 1:
        return c * np.kron(np.kron(g2, np.eye(J)), g0)
    if h == 2:
        return c * np.kron(np.kron(np.eye(K), g1), g0)
    vec = np.kron(np.kron(g2, g1), g0)
    return vec @ z_t[None, :]


def gamma_conditional_dense(
    h: int,
    r: int,
    l: int,
    panel: NetworkPanel,
    aug: AugmentedState,
    params: RegimeParams,
    shrink: ShrinkageState,
    *,
    prior_mean: Optional[np.ndarray] = None,
) -> GaussianConditional:
    """Reference assembly with explicit A_t matrices; column-major vec over (i, j, k)."""
    factors = params.marginals[l].factors
    n_h = factors[h].shape[0]
    prior_prec, prior_lin = _prior_terms(h, r, l, n_h, shrink, prior_mean)
    idx, z, om, kap = _regime_slices(panel, aug, l, None, None)

    prec = prior_prec * np.eye(n_h)
    lin = prior_lin.copy()
    if idx.size == 0:
        return GaussianConditional(prec, lin)

    g = [f[:, r] for f in factors]
    outer3 = np.einsum("i,j,k->ijk", g[0], g[1], g[2])
    eta = linear_predictor(params.marginals[l], z)
    for pos in range(idx.size):
        z_t = z[pos]
        a = design_matrix(h, r, factors, z_t)
        rest = eta[..., pos] - outer3 * float(z_t @ g[3])
        w = om[..., pos].reshape(-1, order="F")
        k = kap[..., pos].reshape(-1, order="F")
        gbar = rest.reshape(-1, order="F")
        prec += a.T @ (w[:, None] * a)
        lin += a.T @ (k - w * gbar)
    return GaussianConditional(prec, lin)


def sample_gamma_marginal(
    h: int,
    r: int,
    l: int,
    panel: NetworkPanel,
    aug: AugmentedState,
    params: RegimeParams,
    shrink: ShrinkageState,
    rng: RngStream,
    *,
    jitter: float = 1e-10,
    prior_mean: Optional[np.ndarray] = None,
    omega_eff: Optional[np.ndarray] = None,
    kappa: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Draw gamma_{h,l}^{(r)} from its full conditional and store it in params (in place)."""
    cond = gamma_conditional(
        h, r, l, panel, aug, params, shrink,
        prior_mean=prior_mean, omega_eff=omega_eff, kappa=kappa,
    )
    try:
        draw = cond.sample(rng, jitter)
    except NumericalError as exc:
        exc.details.update({"mode": h, "rank": r, "regime": l})
        raise
    params.marginals[l].factors[h][:, r] = draw
    return draw
