"""Public random-variate exports for zimsnet."""

from __future__ import annotations

from .hmc import HmcStep, StepSizeAdapter, hmc_update
from .stream import RngStream
from .variates import (
    GigParams,
    StandardKind,
    gig_logpdf_kernel,
    gig_moment,
    pg1_mean,
    sample_bernoulli,
    sample_beta,
    sample_categorical,
    sample_dirichlet,
    sample_gamma,
    sample_gig,
    sample_pg1,
    sample_standard,
)

__all__ = [
    "RngStream",
    "GigParams",
    "StandardKind",
    "sample_pg1",
    "pg1_mean",
    "sample_gig",
    "gig_moment",
    "gig_logpdf_kernel",
    "sample_gamma",
    "sample_beta",
    "sample_dirichlet",
    "sample_bernoulli",
    "sample_categorical",
    "sample_standard",
    "HmcStep",
    "StepSizeAdapter",
    "hmc_update",
]
