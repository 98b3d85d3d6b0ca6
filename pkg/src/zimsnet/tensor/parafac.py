"""PARAFAC (CP) marginals and reconstruction."""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from zimsnet.errors import DimensionError

from .dense import DenseTensor


@dataclass(slots=True)
class ParafacMarginals:
    """
    Rank-R PARAFAC marginals.

    factors[h] has shape (n_h, R); column r is the marginal gamma_h^{(r)}.
    The model uses four modes with (n_0, n_1, n_2, n_3) = (I, J, K, Q).
    """

    factors: list[np.ndarray]

    def __post_init__(self) -> None:
        self.factors = [np.array(f, dtype=np.float64, copy=True) for f in self.factors]
        if not self.factors:
            raise DimensionError("PARAFAC marginals need at least one mode")
        for h, f in enumerate(self.factors):
            if f.ndim != 2:
                raise DimensionError(
                    "each factor must be a (n_h, R) matrix",
                    details={"mode": h, "shape": f.shape},
                )
        ranks = {f.shape[1] for f in self.factors}
        if len(ranks) != 1 or 0 in ranks:
            raise DimensionError(
                "all factors must share a positive rank",
                details={"ranks": sorted(ranks)},
            )

    @classmethod
    def zeros(cls, dims: Sequence[int], rank: int) -> ParafacMarginals:
        return cls([np.zeros((int(n), int(rank))) for n in dims])

    @property
    def rank(self) -> int:
        return int(self.factors[0].shape[1])

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(f.shape[0]) for f in self.factors)

    @property
    def n_params(self) -> int:
        """Stored reals: R * sum(n_h) (versus prod(n_h) for the dense tensor)."""
        return self.rank * sum(self.dims)

    def marginal(self, h: int, r: int) -> np.ndarray:
        return self.factors[h][:, r]

    def copy(self) -> ParafacMarginals:
        return ParafacMarginals([f.copy() for f in self.factors])


def _einsum_subscripts(order: int) -> str:
    letters = string.ascii_lowercase[:order]
    return ",".join(f"{c}z" for c in letters) + "->" + letters


def parafac_reconstruct(m: ParafacMarginals) -> DenseTensor:
    """Sum over r of the outer products gamma_0^{(r)} o ... o gamma_{D-1}^{(r)}."""
    return DenseTensor(np.einsum(_einsum_subscripts(len(m.factors)), *m.factors))


def parafac_last_mode_product(m: ParafacMarginals, z: np.ndarray) -> np.ndarray:
    """
    Contract the last mode of the reconstructed tensor with every row of z.

    For a 4-mode decomposition and z of shape (T, Q) this returns the
    (I, J, K, T) array of linear predictors sum_r <gamma_3^{(r)}, z_t>
    gamma_0^{(r)} o gamma_1^{(r)} o gamma_2^{(r)}, without forming the
    dense I x J x K x Q tensor.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim == 1:
        z = z[None, :]
    last = m.factors[-1]
    if z.shape[1] != last.shape[0]:
        raise DimensionError(
            "covariate length does not match the last mode",
            details={"covariates": z.shape, "mode_size": last.shape[0]},
        )
    weights = z @ last  # (T, R)
    order = len(m.factors) - 1
    letters = string.ascii_lowercase[:order]
    subs = ",".join(f"{c}z" for c in letters) + ",yz->" + letters + "y"
    return np.einsum(subs, *m.factors[:-1], weights)
