"""Label-switching identification: regimes ordered by decreasing rho."""

from __future__ import annotations

import numpy as np

from zimsnet.model import AugmentedState, RegimeParams, ShrinkageState


def relabel_permutation(rho: np.ndarray) -> np.ndarray:
    """perm[new] = old; stable, so ties keep regime order."""
    return np.argsort(-np.asarray(rho, dtype=np.float64), kind="stable")


def apply_permutation(
    perm: np.ndarray,
    params: RegimeParams,
    shrink: ShrinkageState,
    aug: AugmentedState,
) -> tuple[RegimeParams, ShrinkageState, AugmentedState]:
    """
    Permute every regime-indexed quantity: marginals, rho, both axes of xi,
    w[:, :, l], lambda and the labels of s. tau and psi are shared and kept.
    d and omega are not regime-indexed and are passed through.
    """
    perm = np.asarray(perm, dtype=np.int64)
    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.size)
    new_params = RegimeParams(
        marginals=[params.marginals[old] for old in perm],
        rho=params.rho[perm],
        xi=params.xi[np.ix_(perm, perm)],
    )
    new_shrink = ShrinkageState(tau=shrink.tau, psi=shrink.psi, w=shrink.w[:, :, perm], lam=shrink.lam[perm])
    new_aug = AugmentedState(s=inverse[aug.s], d=aug.d, omega=aug.omega)
    return new_params, new_shrink, new_aug


def relabel(
    params: RegimeParams,
    shrink: ShrinkageState,
    aug: AugmentedState,
) -> tuple[RegimeParams, ShrinkageState, AugmentedState, bool]:
    """
    Reorder regimes so rho is descending.

    Returns the permuted state and whether a non-identity permutation was applied.
    """
    perm = relabel_permutation(params.rho)
    if np.array_equal(perm, np.arange(perm.size)):
        return params, shrink, aug, False
    return (*apply_permutation(perm, params, shrink, aug), True)
