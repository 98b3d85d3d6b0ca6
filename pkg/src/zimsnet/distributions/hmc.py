"""Scalar Hamiltonian Monte Carlo update with leapfrog integration."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

from zimsnet.errors import ArgumentError

from .stream import RngStream

logger = logging.getLogger(__name__)

LogDensity = Callable[[float], float]


@dataclass(frozen=True, slots=True)
class HmcStep:
    """Outcome of one HMC transition."""

    value: float
    accepted: bool
    accept_prob: float
    energy_error: float
    diverged: bool = False


def hmc_update(
    logdensity: LogDensity,
    gradient: LogDensity,
    current: float,
    step: float,
    nleap: int,
    rng: RngStream,
) -> HmcStep:
    """
    One HMC transition targeting exp(logdensity) on the real line.

    Unit-mass momentum, nleap leapfrog steps of size step, Metropolis
    correction on the Hamiltonian. A non-finite gradient or energy rejects the
    proposal and sets diverged.
    """
    if step < 0 or not math.isfinite(step):
        raise ArgumentError("HMC step must be finite and non-negative", details={"step": step})
    if nleap < 1:
        raise ArgumentError("HMC needs at least one leapfrog step", details={"nleap": nleap})

    current_logp = logdensity(current)
    if not math.isfinite(current_logp):
        raise ArgumentError(
            "log-density is not finite at the current state",
            details={"current": current, "logdensity": current_logp},
        )

    momentum = float(rng.normal())
    h_start = -current_logp + 0.5 * momentum * momentum

    q = current
    p = momentum
    try:
        p += 0.5 * step * gradient(q)
        for i in range(nleap):
            q += step * p
            if i < nleap - 1:
                p += step * gradient(q)
        p += 0.5 * step * gradient(q)
        h_end = -logdensity(q) + 0.5 * p * p
    except (OverflowError, ValueError, ZeroDivisionError):
        h_end = math.nan

    u = rng.uniform()
    if not (math.isfinite(q) and math.isfinite(p) and math.isfinite(h_end)):
        logger.debug("HMC trajectory diverged from %r", current)
        return HmcStep(value=current, accepted=False, accept_prob=0.0, energy_error=math.inf, diverged=True)

    energy_error = h_end - h_start
    log_ratio = -energy_error
    accept_prob = 1.0 if log_ratio >= 0 else math.exp(log_ratio)
    if u < accept_prob:
        return HmcStep(value=q, accepted=True, accept_prob=accept_prob, energy_error=energy_error)
    return HmcStep(value=current, accepted=False, accept_prob=accept_prob, energy_error=energy_error)


class StepSizeAdapter:
    """
    Robbins-Monro tuning of log(step) toward a target acceptance probability.

    Adapt during burn-in only, then freeze() so the transition kernel is fixed.
    """

    def __init__(self, step: float, *, target: float = 0.75, decay: float = 0.6) -> None:
        if step <= 0:
            raise ArgumentError("initial HMC step must be positive", details={"step": step})
        self.log_step = math.log(step)
        self.target = target
        self.decay = decay
        self.frozen = False
        self._count = 0

    @property
    def step(self) -> float:
        return math.exp(self.log_step)

    def update(self, accept_prob: float) -> None:
        if self.frozen:
            return
        self._count += 1
        rate = (self._count + 10.0) ** (-self.decay)
        self.log_step += rate * (accept_prob - self.target)
        self.log_step = min(max(self.log_step, math.log(1e-4)), math.log(10.0))

    def freeze(self) -> None:
        self.frozen = True
