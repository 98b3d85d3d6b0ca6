"""Exact random-variate generators used by the samplers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence, Union

import numpy as np
from polyagamma import random_polyagamma
from scipy import special, stats

from zimsnet.errors import ArgumentError, NumericalError

from .stream import RngStream

ArrayLike = Union[float, Sequence[float], np.ndarray]


def sample_pg1(c: ArrayLike, rng: RngStream, size: int | tuple[int, ...] | None = None):
    """
    Draw from the Polya-Gamma PG(1, c) distribution.

    Uses Devroye's alternating-series rejection sampler, which is exact for
    integer shape. c may be a scalar or an array (one draw per entry).
    """
    c_arr = np.asarray(c, dtype=np.float64)
    if not np.all(np.isfinite(c_arr)):
        raise ArgumentError("PG tilting parameter must be finite")
    out = random_polyagamma(1, c_arr, size=size, method="devroye", random_state=rng.generator)
    if np.ndim(out) == 0:
        return float(out)
    return out


def pg1_mean(c: ArrayLike) -> np.ndarray | float:
    """E[PG(1, c)] = tanh(c/2) / (2c), with limit 1/4 at c = 0."""
    c_arr = np.abs(np.asarray(c, dtype=np.float64))
    small = c_arr < 1e-8
    safe = np.where(small, 1.0, c_arr)
    out = np.where(small, 0.25 - c_arr**2 / 48.0, np.tanh(safe / 2.0) / (2.0 * safe))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True, slots=True)
class GigParams:
    """
    Generalized inverse Gaussian with density proportional to
    x^{p-1} exp(-(a x + b / x) / 2) on x > 0.

    a = 0 (with p < 0) is the inverse-gamma limit and b = 0 (with p > 0) the
    gamma limit.
    """

    a: float
    b: float
    p: float

    def validate(self) -> None:
        a, b, p = self.a, self.b, self.p
        if not all(math.isfinite(v) for v in (a, b, p)):
            raise ArgumentError("GIG parameters must be finite", details=self._details())
        if a < 0 or b < 0:
            raise ArgumentError("GIG parameters a, b must be non-negative", details=self._details())
        if b == 0 and not (a > 0 and p > 0):
            raise ArgumentError("GIG with b = 0 requires a > 0 and p > 0", details=self._details())
        if a == 0 and not (b > 0 and p < 0):
            raise ArgumentError("GIG with a = 0 requires b > 0 and p < 0", details=self._details())

    def _details(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b, "p": self.p}


# Below this sqrt(ab) the interior sampler loses precision; the GIG is then
# indistinguishable from its gamma (p > 0) or inverse-gamma (p < 0) limit.
GIG_SMALL_OMEGA = 1e-12


def sample_gig(g: GigParams, rng: RngStream, size: int | None = None):
    """
    Exact draw from GIG(a, b, p).

    The interior case maps to scipy's two-parameter geninvgauss (ratio of
    uniforms with mode shift) through x = sqrt(b/a) * y, y ~ GIG(p, sqrt(ab)).
    Returns a float, or an array of size draws when size is given.
    """
    g.validate()
    gen = rng.generator
    if g.b == 0.0:
        return _as_draw(gen.gamma(g.p, 2.0 / g.a, size=size))
    if g.a == 0.0:
        return _as_draw(1.0 / gen.gamma(-g.p, 2.0 / g.b, size=size))
    omega = math.sqrt(g.a * g.b)
    if omega < GIG_SMALL_OMEGA:
        if g.p > 0:
            return _as_draw(gen.gamma(g.p, 2.0 / g.a, size=size))
        if g.p < 0:
            return _as_draw(1.0 / gen.gamma(-g.p, 2.0 / g.b, size=size))
        omega = GIG_SMALL_OMEGA
    eta = math.sqrt(g.b / g.a)
    try:
        y = stats.geninvgauss.rvs(g.p, omega, size=size, random_state=gen)
    except RuntimeError as exc:
        raise NumericalError("GIG sampler failed", details=g._details(), cause=exc) from exc
    x = eta * np.asarray(y, dtype=np.float64)
    if not np.all(np.isfinite(x) & (x > 0)):
        raise NumericalError("GIG sampler returned a non-positive draw", details=g._details())
    return _as_draw(x)


def _as_draw(x):
    if np.ndim(x) == 0:
        return float(x)
    return x


def _gamma_limit_moment(p: float, a: float, k: int) -> float:
    # Gamma(shape p, rate a/2)
    return float(np.exp(special.gammaln(p + k) - special.gammaln(p) + k * math.log(2.0 / a)))


def _inverse_gamma_limit_moment(p: float, b: float, k: int) -> float:
    shape = -p
    if shape <= k:
        return math.inf
    return float(np.exp(special.gammaln(shape - k) - special.gammaln(shape) + k * math.log(b / 2.0)))


def gig_moment(g: GigParams, k: int = 1) -> float:
    """E[X^k] = (b/a)^{k/2} K_{p+k}(sqrt(ab)) / K_p(sqrt(ab)), with gamma/inverse-gamma limits."""
    g.validate()
    if g.b == 0.0:
        return _gamma_limit_moment(g.p, g.a, k)
    if g.a == 0.0:
        return _inverse_gamma_limit_moment(g.p, g.b, k)
    omega = math.sqrt(g.a * g.b)
    if omega >= GIG_SMALL_OMEGA or g.p == 0:
        omega = max(omega, GIG_SMALL_OMEGA)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            log_ratio = np.log(special.kve(g.p + k, omega)) - np.log(special.kve(g.p, omega))
        if np.isfinite(log_ratio):
            return float(np.exp(0.5 * k * (math.log(g.b) - math.log(g.a)) + log_ratio))
        if g.p == 0:
            raise NumericalError("GIG moment is not representable", details={**g._details(), "k": k})
    if g.p > 0:
        return _gamma_limit_moment(g.p, g.a, k)
    return _inverse_gamma_limit_moment(g.p, g.b, k)


def gig_logpdf_kernel(x: float, g: GigParams) -> float:
    """Unnormalized log-density (p-1) log x - (a x + b / x) / 2."""
    if x <= 0:
        return -math.inf
    return (g.p - 1.0) * math.log(x) - 0.5 * (g.a * x + g.b / x)


def _require_positive(name: str, value: ArrayLike) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.size == 0 or not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ArgumentError(f"{name} must be finite and strictly positive", details={name: value})
    return arr


def sample_gamma(shape: float, rate: float, rng: RngStream, size=None):
    """Gamma in the shape-rate parameterization (mean shape / rate)."""
    _require_positive("shape", shape)
    _require_positive("rate", rate)
    return rng.generator.gamma(shape, 1.0 / rate, size=size)


def sample_beta(alpha: float, beta: float, rng: RngStream, size=None):
    _require_positive("alpha", alpha)
    _require_positive("beta", beta)
    return rng.generator.beta(alpha, beta, size=size)


def sample_dirichlet(alpha: Sequence[float] | np.ndarray, rng: RngStream) -> np.ndarray:
    alpha = _require_positive("alpha", alpha)
    return rng.generator.dirichlet(alpha)


def sample_bernoulli(prob: ArrayLike, rng: RngStream, size=None):
    prob_arr = np.asarray(prob, dtype=np.float64)
    if np.any(~np.isfinite(prob_arr)) or np.any(prob_arr < 0) or np.any(prob_arr > 1):
        raise ArgumentError("Bernoulli probability must lie in [0, 1]")
    if size is None:
        size = prob_arr.shape
    return (rng.generator.random(size) < prob_arr).astype(np.uint8)


def sample_categorical(weights: Sequence[float] | np.ndarray, rng: RngStream) -> int:
    """Draw an index with probability proportional to non-negative weights."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size == 0 or np.any(~np.isfinite(w)) or np.any(w < 0) or w.sum() <= 0:
        raise ArgumentError("categorical weights must be non-negative with positive sum")
    cdf = np.cumsum(w)
    u = rng.generator.random() * cdf[-1]
    return int(min(np.searchsorted(cdf, u, side="right"), w.size - 1))


class StandardKind(str, Enum):
    """Families served by sample_standard."""

    BETA = "beta"
    GAMMA = "gamma"
    DIRICHLET = "dirichlet"
    BERNOULLI = "bernoulli"
    CATEGORICAL = "categorical"


def sample_standard(kind: StandardKind | str, params: Sequence[Any], rng: RngStream):
    """
    Dispatch to one of the standard families.

    params:
        beta -> (alpha, beta); gamma -> (shape, rate); dirichlet -> (alpha_vector,);
        bernoulli -> (p,); categorical -> (weights,)
    """
    kind = StandardKind(kind)
    if kind is StandardKind.BETA:
        return float(sample_beta(params[0], params[1], rng))
    if kind is StandardKind.GAMMA:
        return float(sample_gamma(params[0], params[1], rng))
    if kind is StandardKind.DIRICHLET:
        return sample_dirichlet(params[0], rng)
    if kind is StandardKind.BERNOULLI:
        return int(sample_bernoulli(params[0], rng, size=()))
    return sample_categorical(params[0], rng)
