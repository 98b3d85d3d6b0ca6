"""Effective sample sizes and posterior summaries over stored draws."""

from __future__ import annotations

import math
from typing import Any, Protocol, Sequence

import numpy as np
import pandas as pd

from zimsnet.errors import ArgumentError, DimensionError
from zimsnet.model import NetworkPanel


class SummarizableDraw(Protocol):
    s: np.ndarray

    def scalars(self) -> dict[str, float]: ...

    def edge_probability(self, panel: NetworkPanel) -> np.ndarray: ...


def autocorrelation(x: np.ndarray) -> np.ndarray:
    """Normalized autocorrelation at lags 0..n-1 via a zero-padded FFT."""
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    centered = x - x.mean()
    f = np.fft.rfft(centered, n=2 * n)
    acov = np.fft.irfft(f * np.conj(f), n=2 * n)[:n] / n
    if acov[0] <= 0:
        return np.full(n, np.nan)
    return acov / acov[0]


def effective_sample_size(x: Sequence[float] | np.ndarray) -> float:
    """
    ESS by Geyer's initial monotone sequence estimator.

    Autocorrelation pairs rho_{2k} + rho_{2k+1} are summed while positive and
    forced non-increasing. A constant series returns nan.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.size
    if n < 4:
        return float(n)
    rho = autocorrelation(x)
    if np.isnan(rho[0]):
        return math.nan
    m = n // 2
    pairs = rho[: 2 * m].reshape(m, 2).sum(axis=1)
    positive = pairs > 0
    stop = int(np.argmin(positive)) if not positive.all() else m
    pairs = np.minimum.accumulate(pairs[:stop])
    tau = -1.0 + 2.0 * float(pairs.sum())
    tau = max(tau, 1.0 / math.log10(max(n, 10)))
    return float(n / tau)


def monte_carlo_se(x: Sequence[float] | np.ndarray) -> float:
    """Standard error of the sample mean using the ESS."""
    x = np.asarray(x, dtype=np.float64)
    ess = effective_sample_size(x)
    if not ess or math.isnan(ess):
        return 0.0
    return float(x.std(ddof=1) / math.sqrt(ess))


def draw_table(draws: Sequence[SummarizableDraw]) -> pd.DataFrame:
    """One row per stored draw, one column per named scalar parameter."""
    return pd.DataFrame([d.scalars() for d in draws])


def posterior_summary(draws: Sequence[SummarizableDraw]) -> dict[str, dict[str, float]]:
    """mean, q05, q95 and ESS for every scalar parameter."""
    if not draws:
        raise ArgumentError("no stored draws to summarize")
    table = draw_table(draws)
    out: dict[str, dict[str, float]] = {}
    for name in table.columns:
        col = table[name].to_numpy(dtype=np.float64)
        out[name] = {
            "mean": float(col.mean()),
            "q05": float(np.quantile(col, 0.05)),
            "q95": float(np.quantile(col, 0.95)),
            "ess": effective_sample_size(col),
        }
    return out


def regime_probabilities(draws: Sequence[SummarizableDraw], n_regimes: int) -> np.ndarray:
    """Fraction of draws with s_t = l, shape (T, L)."""
    if not draws:
        raise ArgumentError("no stored draws to summarize")
    paths = np.stack([np.asarray(d.s, dtype=np.int64) for d in draws])
    return np.stack([(paths == l).mean(axis=0) for l in range(n_regimes)], axis=1)


def posterior_edge_probability(draws: Sequence[SummarizableDraw], panel: NetworkPanel) -> np.ndarray:
    """Posterior predictive p(x_{ijk,t} = 1) averaged over draws, shape (I, J, K, T)."""
    if not draws:
        raise ArgumentError("no stored draws to summarize")
    total = np.zeros(panel.x.shape)
    for d in draws:
        total += d.edge_probability(panel)
    return total / len(draws)


def _regime_params(draw: Any, edge_dims: tuple[int, int, int] | None) -> Any:
    params = draw.params
    if hasattr(params, "to_regime_params"):
        if edge_dims is None:
            raise ArgumentError("pooled draws need the edge dimensions (I, J, K) to expand")
        return params.to_regime_params(edge_dims)
    return params


def coefficient_summary(draws: Sequence[Any], edge_dims: tuple[int, int, int] | None = None) -> pd.DataFrame:
    """
    Long-format summary of the reconstructed coefficient tensors:
    columns i, j, k, covariate, regime, mean, q05, q95, significant.
    Rows run with i fastest, then j, k, covariate and regime.

    Pooled draws are expanded to the equivalent unrestricted tensors, so
    edge_dims is required for them. significant marks a 90% interval
    that excludes zero.
    """
    if not draws:
        raise ArgumentError("no stored draws to summarize")
    expanded = [_regime_params(d, edge_dims) for d in draws]
    first = expanded[0]
    I, J, K, Q = first.marginals[0].dims
    ii, jj, kk, qq = np.meshgrid(np.arange(I), np.arange(J), np.arange(K), np.arange(Q), indexing="ij")
    frames = []
    for l in range(first.n_regimes):
        stack = np.stack([p.coefficient_tensor(l).data for p in expanded])
        q05 = np.quantile(stack, 0.05, axis=0).ravel(order="F")
        q95 = np.quantile(stack, 0.95, axis=0).ravel(order="F")
        frames.append(
            pd.DataFrame(
                {
                    "i": ii.ravel(order="F"),
                    "j": jj.ravel(order="F"),
                    "k": kk.ravel(order="F"),
                    "covariate": qq.ravel(order="F"),
                    "regime": l,
                    "mean": stack.mean(axis=0).ravel(order="F"),
                    "q05": q05,
                    "q95": q95,
                    "significant": (q05 > 0) | (q95 < 0),
                }
            )
        )
    return pd.concat(frames, ignore_index=True)


def _node_totals(values: np.ndarray) -> np.ndarray:
    """Sum over every entry a node takes part in, as sender or receiver, for an (N, N, K, Q) array."""
    n = values.shape[0]
    idx = np.arange(n)
    out = values.sum(axis=(1, 2, 3)) + values.sum(axis=(0, 2, 3))
    return out - values[idx, idx].sum(axis=(1, 2))


def node_summary(
    draws: Sequence[Any],
    panel: NetworkPanel,
    coefficients: pd.DataFrame | None = None,
) -> pd.DataFrame:
    """
    Per node and regime: total degree averaged over the periods whose
    posterior-mode regime is l, against the summed positive and negative
    posterior-mean coefficients of the edges the node sends or receives,
    and the number of those coefficients flagged significant.

    Periods never assigned to a regime leave its mean_degree as NaN.
    """
    if panel.I != panel.J:
        raise DimensionError(
            "node summaries need the same node set on both edge modes",
            details={"I": panel.I, "J": panel.J},
        )
    if coefficients is None:
        coefficients = coefficient_summary(draws, edge_dims=(panel.I, panel.J, panel.K))
    L = int(coefficients["regime"].max()) + 1
    mode_path = regime_probabilities(draws, L).argmax(axis=1)
    x = panel.x.astype(np.float64)
    degree = x.sum(axis=(1, 2)) + x.sum(axis=(0, 2))  # (N, T)
    shape = (panel.I, panel.J, panel.K, panel.Q)
    frames = []
    for l in range(L):
        sub = coefficients[coefficients["regime"] == l]
        mean = sub["mean"].to_numpy().reshape(shape, order="F")
        significant = sub["significant"].to_numpy().reshape(shape, order="F")
        periods = mode_path == l
        mean_degree = degree[:, periods].mean(axis=1) if periods.any() else np.full(panel.I, np.nan)
        frames.append(
            pd.DataFrame(
                {
                    "node": np.arange(panel.I),
                    "regime": l,
                    "n_periods": int(periods.sum()),
                    "mean_degree": mean_degree,
                    "positive_coef": _node_totals(np.clip(mean, 0.0, None)),
                    "negative_coef": _node_totals(np.clip(mean, None, 0.0)),
                    "n_significant": _node_totals(significant.astype(np.int64)),
                }
            )
        )
    return pd.concat(frames, ignore_index=True)
