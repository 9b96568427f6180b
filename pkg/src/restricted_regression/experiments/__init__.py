"""Simulation studies, real-data analyses and estimator metrics."""

from restricted_regression.experiments.metrics import mse, relative_efficiency
from restricted_regression.experiments.simulation import (
    simulate_multivariate,
    simulate_univariate,
    standard_design,
)
from restricted_regression.experiments.studies import (
    Method,
    RealDataConfig,
    ReplicationEstimate,
    Scale,
    SimulationConfig,
    Study,
    StudyResult,
    example1_config,
    example2_config,
    run_chemical_analysis,
    run_delta_sweep,
    run_example1,
    run_example2,
    run_rent_analysis,
    run_simulation,
    run_study,
    write_study_outputs,
)

__all__ = [
    "Method",
    "RealDataConfig",
    "ReplicationEstimate",
    "Scale",
    "SimulationConfig",
    "Study",
    "StudyResult",
    "example1_config",
    "example2_config",
    "mse",
    "relative_efficiency",
    "run_chemical_analysis",
    "run_delta_sweep",
    "run_example1",
    "run_example2",
    "run_rent_analysis",
    "run_simulation",
    "run_study",
    "simulate_multivariate",
    "simulate_univariate",
    "standard_design",
    "write_study_outputs",
]
