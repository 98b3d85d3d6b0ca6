"""Prior hyperparameters."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Optional

import numpy as np

from zimsnet.errors import ArgumentError

N_MODES = 4


def _per_regime(value: Any, n_regimes: int, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 0:
        arr = np.full(n_regimes, float(arr))
    if arr.shape != (n_regimes,):
        raise ArgumentError(
            f"{name} must be a scalar or have one entry per regime",
            details={name: arr.tolist(), "L": n_regimes},
        )
    return arr


@dataclass(slots=True)
class PriorConfig:
    """
    Hyperparameters of the hierarchical prior.

    gamma_h,l^(r) ~ N(0, tau phi_r w_{h,r,l} I), tau ~ Ga(alpha R, b_tau),
    phi ~ Dir(alpha), w_{h,r,l} ~ Exp(lambda_l^2 / 2), lambda_l ~ Ga(a_lambda, b_lambda),
    rho_l ~ Be(a_rho, b_rho), xi_l ~ Dir(c[l]). Gamma laws use shape-rate.
    """

    rank: int
    n_regimes: int
    alpha: float = 1.0
    b_tau: float = 1.0
    a_lambda: Any = 3.0
    b_lambda: Any = 2.0
    a_rho: Any = 1.0
    b_rho: Any = 1.0
    c: Optional[Any] = None

    def __post_init__(self) -> None:
        self.rank = int(self.rank)
        self.n_regimes = int(self.n_regimes)
        if self.rank < 1 or self.n_regimes < 1:
            raise ArgumentError(
                "rank and number of regimes must be positive",
                details={"rank": self.rank, "n_regimes": self.n_regimes},
            )
        L = self.n_regimes
        self.a_lambda = _per_regime(self.a_lambda, L, "a_lambda")
        self.b_lambda = _per_regime(self.b_lambda, L, "b_lambda")
        self.a_rho = _per_regime(self.a_rho, L, "a_rho")
        self.b_rho = _per_regime(self.b_rho, L, "b_rho")
        if self.c is None:
            self.c = np.ones((L, L)) + 3.0 * np.eye(L)
        self.c = np.asarray(self.c, dtype=np.float64)
        if self.c.shape != (L, L):
            raise ArgumentError(
                "transition prior must be an L x L matrix",
                details={"shape": self.c.shape, "L": L},
            )
        self.validate()

    @property
    def a_tau(self) -> float:
        return self.alpha * self.rank

    def validate(self) -> None:
        positives = {
            "alpha": np.asarray(self.alpha),
            "b_tau": np.asarray(self.b_tau),
            "a_lambda": self.a_lambda,
            "b_lambda": self.b_lambda,
            "a_rho": self.a_rho,
            "b_rho": self.b_rho,
            "c": self.c,
        }
        for name, value in positives.items():
            if not np.all(np.isfinite(value)) or np.any(value <= 0):
                raise ArgumentError(
                    f"prior hyperparameter {name} must be strictly positive",
                    details={name: np.asarray(value).tolist()},
                )

    def to_dict(self) -> dict[str, Any]:
        return {
            "rank": self.rank,
            "n_regimes": self.n_regimes,
            "alpha": float(self.alpha),
            "b_tau": float(self.b_tau),
            "a_lambda": self.a_lambda.tolist(),
            "b_lambda": self.b_lambda.tolist(),
            "a_rho": self.a_rho.tolist(),
            "b_rho": self.b_rho.tolist(),
            "c": self.c.tolist(),
        }

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> PriorConfig:
        keys = ("rank", "n_regimes", "alpha", "b_tau", "a_lambda", "b_lambda", "a_rho", "b_rho", "c")
        kwargs = {k: data[k] for k in keys if k in data and data[k] is not None}
        return cls(**kwargs)
