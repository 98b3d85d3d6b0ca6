"""Observed binary tensor series with common covariates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from zimsnet.errors import ValidationError


@dataclass(slots=True)
class NetworkPanel:
    """
    Binary network tensors X_t stacked along the last axis, plus covariates.

    Attributes:
        x: uint8 array of shape (I, J, K, T) with entries in {0, 1}.
        z: float array of shape (T, Q); row t is z_t. The model does not add
           an intercept: include a constant column explicitly.
    """

    x: np.ndarray
    z: np.ndarray

    def __post_init__(self) -> None:
        self.x = np.asarray(self.x)
        self.z = np.asarray(self.z, dtype=np.float64)
        if self.x.ndim != 4:
            raise ValidationError(
                "network tensor must have shape (I, J, K, T)",
                details={"shape": self.x.shape},
            )
        if self.z.ndim != 2:
            raise ValidationError(
                "covariates must have shape (T, Q)",
                details={"shape": self.z.shape},
            )
        validate_binary(self.x)
        self.x = self.x.astype(np.uint8, copy=False)

    @property
    def dims(self) -> tuple[int, int, int, int, int]:
        """(I, J, K, T, Q)."""
        i, j, k, t = self.x.shape
        return i, j, k, t, int(self.z.shape[1])

    @property
    def I(self) -> int:  # noqa: E743
        return int(self.x.shape[0])

    @property
    def J(self) -> int:
        return int(self.x.shape[1])

    @property
    def K(self) -> int:
        return int(self.x.shape[2])

    @property
    def T(self) -> int:
        return int(self.x.shape[3])

    @property
    def Q(self) -> int:
        return int(self.z.shape[1])

    @property
    def mode_sizes(self) -> tuple[int, int, int, int]:
        """Marginal lengths (n_0, n_1, n_2, n_3) = (I, J, K, Q)."""
        return self.I, self.J, self.K, self.Q

    def validate(self, *, min_periods: int = 2) -> None:
        """Strict validation used before fitting. Raises ValidationError."""
        validate_binary(self.x)
        validate_covariates(self.z, self.T)
        if self.T < min_periods:
            raise ValidationError(
                f"need at least {min_periods} time periods",
                details={"T": self.T},
            )
        if self.Q < 1:
            raise ValidationError("need at least one covariate", details={"Q": self.Q})


def validate_binary(x: np.ndarray) -> None:
    bad = (x != 0) & (x != 1)
    if np.any(bad):
        where = tuple(int(v) for v in np.argwhere(bad)[0])
        raise ValidationError("network entries must be 0 or 1", details={"index": where})


def validate_covariates(z: np.ndarray, periods: int) -> None:
    if z.shape[0] != periods:
        raise ValidationError(
            "covariate rows do not match the number of periods",
            details={"covariate_shape": z.shape, "T": periods},
        )
    finite = np.isfinite(z).all(axis=1)
    if not finite.all():
        row = int(np.flatnonzero(~finite)[0])
        raise ValidationError(
            "covariates contain a missing or non-finite row",
            details={"row": row},
        )


def total_degree(panel: NetworkPanel) -> np.ndarray:
    """Number of edges per period (length T)."""
    return panel.x.reshape(-1, panel.T).sum(axis=0).astype(np.int64)


def network_density(panel: NetworkPanel) -> np.ndarray:
    """Fraction of present edges per period (length T)."""
    return total_degree(panel) / float(panel.I * panel.J * panel.K)
