"""Dense tensor container and the mode-n algebra used by the model.

Linearization is column-major (first index fastest) everywhere: vectorize,
matricize and the Kronecker identities used by the marginal updates all rely
on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from zimsnet.errors import DimensionError


@dataclass(frozen=True, slots=True)
class DenseTensor:
    """
    D-order real array.

    The wrapped array is copied and marked read-only on construction, so a
    DenseTensor can be shared freely between threads.
    """

    array: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.array, dtype=np.float64, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_vector(cls, data: Sequence[float] | np.ndarray, shape: Sequence[int]) -> DenseTensor:
        """Build a tensor from its column-major linearization."""
        data = np.asarray(data, dtype=np.float64)
        shape = tuple(int(d) for d in shape)
        if any(d <= 0 for d in shape):
            raise DimensionError("shape entries must be positive", details={"shape": shape})
        if data.size != int(np.prod(shape)):
            raise DimensionError(
                "data length does not match shape",
                details={"length": int(data.size), "shape": shape},
            )
        return cls(data.reshape(shape, order="F"))

    @classmethod
    def zeros(cls, shape: Sequence[int]) -> DenseTensor:
        return cls(np.zeros(tuple(shape)))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.array.shape)

    @property
    def order(self) -> int:
        return self.array.ndim

    @property
    def data(self) -> np.ndarray:
        """Entries in the fixed (column-major) linearization order."""
        return vectorize(self)

    def __getitem__(self, index: tuple[int, ...]) -> float:
        return float(self.array[index])


TensorLike = Union[DenseTensor, np.ndarray, Sequence[float]]


def _as_array(t: TensorLike) -> np.ndarray:
    if isinstance(t, DenseTensor):
        return t.array
    return np.asarray(t, dtype=np.float64)


def _check_mode(n: int, order: int) -> None:
    if not 0 <= n < order:
        raise DimensionError(
            "mode index out of range",
            details={"mode": n, "order": order},
        )


def mode_n_vec_product(t: DenseTensor, v: Sequence[float] | np.ndarray, n: int) -> DenseTensor:
    """
    Contract mode n of t with the vector v.

    Returns a tensor of order D-1 whose entries are sum_{i_n} t[..., i_n, ...] v[i_n].
    """
    arr = _as_array(t)
    _check_mode(n, arr.ndim)
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != arr.shape[n]:
        raise DimensionError(
            "vector length does not match the contracted mode",
            details={"mode": n, "mode_size": arr.shape[n], "vector_shape": v.shape},
        )
    return DenseTensor(np.tensordot(arr, v, axes=([n], [0])))


def matricize(t: DenseTensor, n: int) -> np.ndarray:
    """
    Mode-n unfolding: a (d_n x prod_{i != n} d_i) matrix whose columns are the
    mode-n fibers, ordered column-major over the remaining modes.
    """
    arr = _as_array(t)
    _check_mode(n, arr.ndim)
    return np.moveaxis(arr, n, 0).reshape(arr.shape[n], -1, order="F")


def dematricize(m: np.ndarray, n: int, shape: Sequence[int]) -> DenseTensor:
    """Inverse of matricize for a tensor of the given shape."""
    shape = tuple(int(d) for d in shape)
    _check_mode(n, len(shape))
    m = np.asarray(m, dtype=np.float64)
    rest = shape[:n] + shape[n + 1:]
    if m.shape != (shape[n], int(np.prod(rest))):
        raise DimensionError(
            "matrix shape does not match the target unfolding",
            details={"matrix_shape": m.shape, "shape": shape, "mode": n},
        )
    moved = m.reshape((shape[n],) + rest, order="F")
    return DenseTensor(np.moveaxis(moved, 0, n))


def vectorize(t: DenseTensor) -> np.ndarray:
    """Stack all entries in column-major order (first index fastest)."""
    return _as_array(t).reshape(-1, order="F")


def outer_product(operands: Sequence[TensorLike]) -> DenseTensor:
    """Outer product of two or more vectors/tensors."""
    if len(operands) < 2:
        raise DimensionError(
            "outer product needs at least two operands",
            details={"operands": len(operands)},
        )
    arrays = [_as_array(op) for op in operands]
    return DenseTensor(reduce(np.multiply.outer, arrays))
