"""Block (II): the global-local variance hierarchy psi/phi, tau, w and lambda."""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from zimsnet.distributions import GigParams, HmcStep, RngStream, hmc_update, sample_gig
from zimsnet.model import PriorConfig


def level_variance_params(
    gamma_sq: np.ndarray,
    w: np.ndarray,
    mode_sizes: Sequence[int],
    cfg: PriorConfig,
) -> list[GigParams]:
    """psi_r | . ~ GIG(2 b_tau, sum_{h,l} gamma'gamma / w, alpha - n L / 2), one per r."""
    n = sum(mode_sizes)
    L = w.shape[2]
    b = (gamma_sq / w).sum(axis=(0, 2))
    p = float(cfg.alpha) - 0.5 * n * L
    return [GigParams(a=2.0 * float(cfg.b_tau), b=float(v), p=p) for v in b]


def sample_level_variances(
    gamma_sq: np.ndarray,
    w: np.ndarray,
    mode_sizes: Sequence[int],
    cfg: PriorConfig,
    rng: RngStream,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw psi, then phi = psi / sum(psi)."""
    psi = np.array([sample_gig(g, rng) for g in level_variance_params(gamma_sq, w, mode_sizes, cfg)])
    return psi, psi / psi.sum()


def tau_params(
    gamma_sq: np.ndarray,
    w: np.ndarray,
    phi: np.ndarray,
    mode_sizes: Sequence[int],
    cfg: PriorConfig,
) -> GigParams:
    """tau | . ~ GIG(2 b_tau, sum gamma'gamma / (phi_r w), a_tau - n L R / 2)."""
    n = sum(mode_sizes)
    R, L = w.shape[1], w.shape[2]
    b = float(np.sum(gamma_sq / (phi[None, :, None] * w)))
    return GigParams(a=2.0 * float(cfg.b_tau), b=b, p=cfg.a_tau - 0.5 * n * L * R)


def sample_tau(
    gamma_sq: np.ndarray,
    w: np.ndarray,
    phi: np.ndarray,
    mode_sizes: Sequence[int],
    cfg: PriorConfig,
    rng: RngStream,
) -> float:
    return sample_gig(tau_params(gamma_sq, w, phi, mode_sizes, cfg), rng)


def w_params(
    gamma_sq: np.ndarray,
    tau: float,
    phi: np.ndarray,
    lam: np.ndarray,
    mode_sizes: Sequence[int],
) -> np.ndarray:
    """
    Object array of GigParams with shape (4, R, L):
    w_{h,r,l} | . ~ GIG(lambda_l^2, gamma'gamma / (tau phi_r), 1 - n_h / 2).
    """
    H, R, L = gamma_sq.shape
    out = np.empty((H, R, L), dtype=object)
    for h in range(H):
        p = 1.0 - 0.5 * mode_sizes[h]
        for r in range(R):
            scale = tau * float(phi[r])
            for l in range(L):
                out[h, r, l] = GigParams(a=float(lam[l]) ** 2, b=float(gamma_sq[h, r, l]) / scale, p=p)
    return out


def sample_w(
    gamma_sq: np.ndarray,
    tau: float,
    phi: np.ndarray,
    lam: np.ndarray,
    mode_sizes: Sequence[int],
    rng: RngStream,
) -> np.ndarray:
    params = w_params(gamma_sq, tau, phi, lam, mode_sizes)
    w = np.empty(params.shape)
    for idx in np.ndindex(params.shape):
        w[idx] = sample_gig(params[idx], rng)
    return w


def lambda_shape(cfg: PriorConfig, n_local: int, l: int) -> float:
    """Gamma-like exponent a_lambda + 2 * (number of local variances per regime)."""
    return float(cfg.a_lambda[l]) + 2.0 * n_local


def lambda_logdensity(eta: float, shape: float, rate: float, total_w: float) -> float:
    """
    log p(eta = log lambda | w), Jacobian included:
    shape * eta - rate * e^eta - e^{2 eta} S / 2.
    """
    if eta > 350.0:
        return -math.inf
    return shape * eta - rate * math.exp(eta) - 0.5 * math.exp(2.0 * eta) * total_w


def lambda_gradient(eta: float, shape: float, rate: float, total_w: float) -> float:
    if eta > 350.0:
        return -math.inf
    return shape - rate * math.exp(eta) - math.exp(2.0 * eta) * total_w


def sample_lambda(
    w: np.ndarray,
    lam: np.ndarray,
    cfg: PriorConfig,
    step: float,
    nleap: int,
    rng: RngStream,
    *,
    n_local: Optional[int] = None,
) -> tuple[np.ndarray, list[HmcStep]]:
    """
    One HMC transition per regime on eta_l = log lambda_l.

    w is indexed with the regime on its last axis; S_l sums every other axis.
    n_local defaults to the number of w entries per regime (4R).
    """
    L = lam.shape[0]
    w2 = w.reshape(-1, L)
    if n_local is None:
        n_local = w2.shape[0]
    new = lam.copy()
    steps: list[HmcStep] = []
    for l in range(L):
        shape = lambda_shape(cfg, n_local, l)
        rate = float(cfg.b_lambda[l])
        total = float(w2[:, l].sum())
        res = hmc_update(
            lambda e: lambda_logdensity(e, shape, rate, total),
            lambda e: lambda_gradient(e, shape, rate, total),
            math.log(float(lam[l])),
            step,
            nleap,
            rng,
        )
        new[l] = math.exp(res.value)
        steps.append(res)
    return new, steps
