"""Restricted regression - Bayesian linear regression under K <= H beta <= G."""

from restricted_regression.config import FitConfig, SamplerSettings
from restricted_regression.config_loader import ConfigLoader
from restricted_regression.core import setup_logging
from restricted_regression.datasets import Dataset, load_dataset
from restricted_regression.diagnostics import summarize
from restricted_regression.engines import (
    Chain,
    ChainMV,
    ConjugatePrior,
    PriorSpec,
    PriorSpecMV,
    conjugate_posterior,
    conjugate_posterior_mv,
    geweke_baseline_chain,
    run_chain,
    run_chain_mv,
)
from restricted_regression.experiments import run_study
from restricted_regression.restrictions import (
    Partition,
    RestrictionSystem,
    load_restrictions,
    select_partition,
)

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "ChainMV",
    "ConfigLoader",
    "ConjugatePrior",
    "Dataset",
    "FitConfig",
    "Partition",
    "PriorSpec",
    "PriorSpecMV",
    "RestrictionSystem",
    "SamplerSettings",
    "__version__",
    "conjugate_posterior",
    "conjugate_posterior_mv",
    "geweke_baseline_chain",
    "load_dataset",
    "load_restrictions",
    "run_chain",
    "run_chain_mv",
    "run_study",
    "select_partition",
    "setup_logging",
    "summarize",
]
