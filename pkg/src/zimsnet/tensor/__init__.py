"""Public tensor-algebra exports for zimsnet."""

from __future__ import annotations

from .dense import (
    DenseTensor,
    dematricize,
    matricize,
    mode_n_vec_product,
    outer_product,
    vectorize,
)
from .parafac import ParafacMarginals, parafac_last_mode_product, parafac_reconstruct

__all__ = [
    "DenseTensor",
    "mode_n_vec_product",
    "matricize",
    "dematricize",
    "vectorize",
    "outer_product",
    "ParafacMarginals",
    "parafac_reconstruct",
    "parafac_last_mode_product",
]
