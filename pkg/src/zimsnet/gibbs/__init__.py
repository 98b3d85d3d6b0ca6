"""Public Gibbs-sampler exports for zimsnet."""

from __future__ import annotations

from .config import ChainConfig, Draw
from .diagnostics import (
    autocorrelation,
    coefficient_summary,
    draw_table,
    effective_sample_size,
    monte_carlo_se,
    node_summary,
    posterior_edge_probability,
    posterior_summary,
    regime_probabilities,
)
from .initialize import density_regimes, initial_state, ordered_rho
from .latent import (
    backward_sample,
    ffbs_states,
    forward_filter,
    sample_d,
    sample_omega,
    select_path,
    smoothed_probabilities,
    uniform_initial,
)
from .marginals import (
    GaussianConditional,
    design_matrix,
    gamma_conditional,
    gamma_conditional_dense,
    sample_gamma_marginal,
)
from .relabel import apply_permutation, relabel, relabel_permutation
from .sampler import ChainResult, GibbsSampler, run_chain
from .switching import sample_rho, sample_xi
from .variance import (
    lambda_gradient,
    lambda_logdensity,
    lambda_shape,
    level_variance_params,
    sample_lambda,
    sample_level_variances,
    sample_tau,
    sample_w,
    tau_params,
    w_params,
)

__all__ = [
    "ChainConfig",
    "Draw",
    "ChainResult",
    "GibbsSampler",
    "run_chain",
    "uniform_initial",
    "forward_filter",
    "backward_sample",
    "smoothed_probabilities",
    "ffbs_states",
    "select_path",
    "sample_d",
    "sample_omega",
    "level_variance_params",
    "sample_level_variances",
    "tau_params",
    "sample_tau",
    "w_params",
    "sample_w",
    "lambda_shape",
    "lambda_logdensity",
    "lambda_gradient",
    "sample_lambda",
    "GaussianConditional",
    "design_matrix",
    "gamma_conditional",
    "gamma_conditional_dense",
    "sample_gamma_marginal",
    "sample_rho",
    "sample_xi",
    "relabel_permutation",
    "apply_permutation",
    "relabel",
    "density_regimes",
    "ordered_rho",
    "initial_state",
    "autocorrelation",
    "effective_sample_size",
    "monte_carlo_se",
    "node_summary",
    "draw_table",
    "posterior_summary",
    "regime_probabilities",
    "posterior_edge_probability",
    "coefficient_summary",
]
