"""Gibbs samplers for the restricted regression models."""

from restricted_regression.engines.chain import (
    Chain,
    ChainMV,
    beta_matrix_names,
    beta_names,
    resolve_burn_in,
    sigma_names,
)
from restricted_regression.engines.geweke import geweke_baseline_chain
from restricted_regression.engines.multivariate import (
    ChainStateMV,
    PosteriorCacheMV,
    compute_posterior_cache_mv,
    gibbs_step_mv,
    run_chain_mv,
)
from restricted_regression.engines.priors import (
    ConjugatePosterior,
    ConjugatePosteriorMV,
    ConjugatePrior,
    ConjugatePriorMV,
    PriorSpec,
    PriorSpecMV,
    conjugate_posterior,
    conjugate_posterior_mv,
)
from restricted_regression.engines.univariate import (
    ChainState,
    PosteriorCache,
    compute_posterior_cache,
    gibbs_step,
    run_chain,
)

__all__ = [
    "Chain",
    "ChainMV",
    "ChainState",
    "ChainStateMV",
    "ConjugatePosterior",
    "ConjugatePosteriorMV",
    "ConjugatePrior",
    "ConjugatePriorMV",
    "PosteriorCache",
    "PosteriorCacheMV",
    "PriorSpec",
    "PriorSpecMV",
    "beta_matrix_names",
    "beta_names",
    "compute_posterior_cache",
    "compute_posterior_cache_mv",
    "conjugate_posterior",
    "conjugate_posterior_mv",
    "geweke_baseline_chain",
    "gibbs_step",
    "gibbs_step_mv",
    "resolve_burn_in",
    "run_chain",
    "run_chain_mv",
    "sigma_names",
]
