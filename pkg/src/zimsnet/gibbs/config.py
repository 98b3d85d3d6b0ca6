"""Chain settings and stored draws."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Mapping

import numpy as np
from scipy.special import expit

from zimsnet.errors import ArgumentError
from zimsnet.model import NetworkPanel, RegimeParams, ShrinkageState, path_predictor


@dataclass(slots=True)
class ChainConfig:
    """
    MCMC run settings.

    Iterations 0..burn_in-1 are discarded; afterwards every thin-th sweep is
    stored, so a run keeps (iterations - burn_in) // thin draws.
    """

    iterations: int = 2000
    burn_in: int = 1000
    thin: int = 1
    seed: int = 0
    hmc_step: float = 0.1
    hmc_nleap: int = 10
    jitter: float = 1e-10
    threads: int = 1
    adapt_step: bool = True

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if self.iterations < 1 or self.thin < 1 or self.hmc_nleap < 1 or self.threads < 1:
            raise ArgumentError(
                "iterations, thin, hmc_nleap and threads must be positive",
                details=self.to_dict(),
            )
        if not 0 <= self.burn_in < self.iterations:
            raise ArgumentError(
                "burn_in must be non-negative and smaller than iterations",
                details={"iterations": self.iterations, "burn_in": self.burn_in},
            )
        if not (self.hmc_step > 0 and np.isfinite(self.hmc_step)):
            raise ArgumentError("hmc_step must be positive", details={"hmc_step": self.hmc_step})
        if not 0 < self.jitter <= 1e-6:
            raise ArgumentError("jitter must lie in (0, 1e-6]", details={"jitter": self.jitter})

    @property
    def n_stored(self) -> int:
        return (self.iterations - self.burn_in) // self.thin

    def is_stored(self, iteration: int) -> bool:
        """True if the 0-based sweep index is kept."""
        kept = iteration - self.burn_in + 1
        return kept > 0 and kept % self.thin == 0

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> ChainConfig:
        names = cls.__dataclass_fields__.keys()
        return cls(**{k: data[k] for k in names if k in data and data[k] is not None})


@dataclass(slots=True)
class Draw:
    """Snapshot of the unrestricted model at a stored iteration."""

    iteration: int
    params: RegimeParams
    shrink: ShrinkageState
    s: np.ndarray

    def scalars(self) -> dict[str, float]:
        """Named scalar parameters, used for ESS and summaries."""
        out: dict[str, float] = {"tau": self.shrink.tau}
        for r, v in enumerate(self.shrink.phi):
            out[f"phi[{r}]"] = float(v)
        for l in range(self.params.n_regimes):
            out[f"rho[{l}]"] = float(self.params.rho[l])
            out[f"lambda[{l}]"] = float(self.shrink.lam[l])
            out[f"occupancy[{l}]"] = float(np.mean(self.s == l))
        return out

    def edge_probability(self, panel: NetworkPanel) -> np.ndarray:
        """p(x_{ijk,t} = 1) = (1 - rho_{s_t}) sigma(eta) under this draw, shape (I, J, K, T)."""
        eta = path_predictor(panel, self.params, self.s)
        return (1.0 - self.params.rho[self.s]) * expit(eta)
