"""Mutable model state containers used by the samplers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from zimsnet.errors import InvariantViolationError
from zimsnet.tensor import DenseTensor, ParafacMarginals, parafac_reconstruct

from .config import N_MODES


@dataclass(slots=True)
class RegimeParams:
    """
    Regime-specific parameters.

    Attributes:
        marginals: one ParafacMarginals per regime (factors of shape (n_h, R)).
        rho: zero-inflation probabilities, shape (L,). Identified by
             rho[0] > rho[1] > ... (regime 0 is the sparsest).
        xi: L x L transition matrix, xi[g, l] = p(s_t = l | s_{t-1} = g).
    """

    marginals: list[ParafacMarginals]
    rho: np.ndarray
    xi: np.ndarray

    def __post_init__(self) -> None:
        self.rho = np.asarray(self.rho, dtype=np.float64)
        self.xi = np.asarray(self.xi, dtype=np.float64)

    @property
    def n_regimes(self) -> int:
        return len(self.marginals)

    @property
    def rank(self) -> int:
        return self.marginals[0].rank

    def coefficient_tensor(self, l: int) -> DenseTensor:
        """Dense I x J x K x Q coefficient tensor of regime l."""
        return parafac_reconstruct(self.marginals[l])

    def gamma_stack(self) -> np.ndarray:
        """Squared norms gamma'gamma arranged as (4, R, L)."""
        out = np.empty((N_MODES, self.rank, self.n_regimes))
        for l, m in enumerate(self.marginals):
            for h, f in enumerate(m.factors):
                out[h, :, l] = np.einsum("ir,ir->r", f, f)
        return out

    def copy(self) -> RegimeParams:
        return RegimeParams(
            marginals=[m.copy() for m in self.marginals],
            rho=self.rho.copy(),
            xi=self.xi.copy(),
        )


@dataclass(slots=True)
class ShrinkageState:
    """
    Variance hierarchy of the marginals.

    Attributes:
        tau: global variance.
        psi: positive level variables, shape (R,); phi = psi / sum(psi).
        w: local variances w[h, r, l], shape (4, R, L).
        lam: lambda_l, shape (L,).
    """

    tau: float
    psi: np.ndarray
    w: np.ndarray
    lam: np.ndarray

    def __post_init__(self) -> None:
        self.tau = float(self.tau)
        self.psi = np.asarray(self.psi, dtype=np.float64)
        self.w = np.asarray(self.w, dtype=np.float64)
        self.lam = np.asarray(self.lam, dtype=np.float64)

    @property
    def phi(self) -> np.ndarray:
        return self.psi / self.psi.sum()

    def prior_variances(self) -> np.ndarray:
        """tau * phi_r * w[h, r, l], shape (4, R, L)."""
        return self.tau * self.phi[None, :, None] * self.w

    def is_positive(self) -> bool:
        return bool(
            self.tau > 0
            and np.all(self.psi > 0)
            and np.all(self.w > 0)
            and np.all(self.lam > 0)
        )

    def copy(self) -> ShrinkageState:
        return ShrinkageState(
            tau=self.tau,
            psi=self.psi.copy(),
            w=self.w.copy(),
            lam=self.lam.copy(),
        )


@dataclass(slots=True)
class AugmentedState:
    """
    Latent variables of the augmented likelihood.

    Attributes:
        s: regime path, shape (T,), values in 0..L-1.
        d: zero-inflation allocations, uint8 (I, J, K, T).
        omega: Polya-Gamma variables, float (I, J, K, T).
    """

    s: np.ndarray
    d: np.ndarray
    omega: np.ndarray

    def __post_init__(self) -> None:
        self.s = np.asarray(self.s, dtype=np.int64)
        self.d = np.asarray(self.d).astype(np.uint8, copy=False)
        self.omega = np.asarray(self.omega, dtype=np.float64)

    def kappa(self, x: np.ndarray) -> np.ndarray:
        """kappa = (1 - d)(x - 1/2), recomputed from the current allocations."""
        return (1.0 - self.d) * (x - 0.5)

    def effective_omega(self) -> np.ndarray:
        """omega weighted by (1 - d): allocations at the point mass carry no logistic factor."""
        return (1.0 - self.d) * self.omega

    def check_allocations(self, x: np.ndarray) -> None:
        """Raise if d = 1 anywhere x = 1."""
        bad = (self.d == 1) & (x == 1)
        if np.any(bad):
            where = tuple(int(v) for v in np.argwhere(bad)[0])
            raise InvariantViolationError(
                "allocation to the point mass at an observed edge",
                details={"index": where},
            )

    def copy(self) -> AugmentedState:
        return AugmentedState(s=self.s.copy(), d=self.d.copy(), omega=self.omega.copy())
