"""Block (I): regime path by forward filtering backward sampling, then allocations and Polya-Gamma variables."""

from __future__ import annotations

from concurrent.futures import Executor
from typing import Callable, Optional

import numpy as np
from scipy.special import expit, logsumexp

from zimsnet.distributions import RngStream, sample_categorical, sample_pg1
from zimsnet.errors import NumericalError
from zimsnet.model import NetworkPanel, RegimeParams, log_emissions, regime_predictors


def uniform_initial(n_regimes: int) -> np.ndarray:
    return np.full(n_regimes, 1.0 / n_regimes)


def forward_filter(
    log_em: np.ndarray,
    xi: np.ndarray,
    initial: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, float]:
    """
    Filtered probabilities p(s_t = l | X_1..X_t), shape (T, L), and the log
    marginal likelihood log p(X_1..X_T).

    Raises:
        NumericalError: if every regime has zero likelihood at some t.
    """
    T, L = log_em.shape
    if initial is None:
        initial = uniform_initial(L)
    filtered = np.empty((T, L))
    loglik = 0.0
    with np.errstate(divide="ignore"):
        log_pred = np.log(initial)
        log_xi = np.log(xi)
    for t in range(T):
        joint = log_pred + log_em[t]
        norm = logsumexp(joint)
        if not np.isfinite(norm):
            raise NumericalError(
                "all regimes have zero likelihood",
                details={"t": t, "log_emissions": log_em[t].tolist()},
            )
        log_filt = joint - norm
        filtered[t] = np.exp(log_filt)
        loglik += float(norm)
        if t + 1 < T:
            log_pred = logsumexp(log_filt[:, None] + log_xi, axis=0)
    return filtered, loglik


def backward_sample(filtered: np.ndarray, xi: np.ndarray, rng: RngStream) -> np.ndarray:
    """Draw s_T from the last filter, then s_t with weights filter_t(l) xi[l, s_{t+1}]."""
    T, _ = filtered.shape
    s = np.empty(T, dtype=np.int64)
    s[T - 1] = sample_categorical(filtered[T - 1], rng)
    for t in range(T - 2, -1, -1):
        s[t] = sample_categorical(filtered[t] * xi[:, s[t + 1]], rng)
    return s


def smoothed_probabilities(
    log_em: np.ndarray,
    xi: np.ndarray,
    initial: Optional[np.ndarray] = None,
) -> np.ndarray:
    """p(s_t = l | X_1..X_T) by the scaled forward-backward recursion, shape (T, L)."""
    filtered, _ = forward_filter(log_em, xi, initial)
    T, L = log_em.shape
    scaled = np.exp(log_em - log_em.max(axis=1, keepdims=True))
    beta = np.ones(L)
    smoothed = np.empty((T, L))
    smoothed[T - 1] = filtered[T - 1]
    for t in range(T - 2, -1, -1):
        beta = xi @ (scaled[t + 1] * beta)
        beta /= beta.sum()
        post = filtered[t] * beta
        smoothed[t] = post / post.sum()
    return smoothed


def ffbs_states(
    panel: NetworkPanel,
    params: RegimeParams,
    rng: RngStream,
    *,
    initial: Optional[np.ndarray] = None,
    log_em: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Exact joint draw of the regime path given the data and parameters."""
    if log_em is None:
        log_em = log_emissions(panel, params)
    filtered, _ = forward_filter(log_em, params.xi, initial)
    return backward_sample(filtered, params.xi, rng)


def select_path(predictors: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Pick predictors[s_t, ..., t] for every t: (L, I, J, K, T) -> (I, J, K, T)."""
    T = predictors.shape[-1]
    return np.moveaxis(predictors[np.asarray(s), ..., np.arange(T)], 0, -1)


def _per_period(
    task: Callable[[int, RngStream], None],
    periods: int,
    rng: RngStream,
    executor: Optional[Executor],
) -> None:
    streams = rng.spawn(periods)
    if executor is None:
        for t in range(periods):
            task(t, streams[t])
        return
    for _ in executor.map(task, range(periods), streams):
        pass


def sample_d(
    panel: NetworkPanel,
    params: RegimeParams,
    s: np.ndarray,
    rng: RngStream,
    *,
    eta: Optional[np.ndarray] = None,
    executor: Optional[Executor] = None,
) -> np.ndarray:
    """
    Zero-inflation allocations with omega integrated out.

    x = 1 forces d = 0; for x = 0, p(d = 1) = rho / (rho + (1 - rho) / (1 + exp(eta))).
    """
    if eta is None:
        eta = select_path(regime_predictors(panel, params), s)
    s = np.asarray(s, dtype=np.int64)
    d = np.zeros(panel.x.shape, dtype=np.uint8)

    def task(t: int, stream: RngStream) -> None:
        rho = float(params.rho[s[t]])
        slab = (1.0 - rho) * expit(-eta[..., t])
        total = rho + slab
        prob = np.divide(rho, total, out=np.zeros_like(total), where=total > 0)
        prob = np.where(panel.x[..., t] == 1, 0.0, prob)
        d[..., t] = stream.generator.random(prob.shape) < prob

    _per_period(task, panel.T, rng, executor)
    return d


def sample_omega(
    panel: NetworkPanel,
    params: RegimeParams,
    s: np.ndarray,
    rng: RngStream,
    *,
    d: Optional[np.ndarray] = None,
    eta: Optional[np.ndarray] = None,
    executor: Optional[Executor] = None,
) -> np.ndarray:
    """
    Polya-Gamma variables omega ~ PG(1, z_t' g_{ijk, s_t}).

    When allocations d are given, entries with d = 1 have no logistic factor in
    the likelihood and are drawn from PG(1, 0).
    """
    if eta is None:
        eta = select_path(regime_predictors(panel, params), s)
    omega = np.empty(panel.x.shape)

    def task(t: int, stream: RngStream) -> None:
        c = eta[..., t]
        if d is not None:
            c = np.where(d[..., t] == 1, 0.0, c)
        omega[..., t] = sample_pg1(np.ascontiguousarray(c), stream)

    _per_period(task, panel.T, rng, executor)
    return omega
