"""Pydantic models for the JSON documents the library writes.

Summaries, experiment reports and run manifests are serialized with
``model_dump_json`` and read back with ``model_validate_json``.
"""

from typing import Any

from pydantic import BaseModel, Field


class ParameterSummary(BaseModel):
    """Posterior summary of one parameter.

    Attributes:
        name: Parameter name as in the chain CSV header.
        mean: Posterior mean over the kept draws.
        sd: Posterior standard deviation (ddof = 1).
        ess: Effective sample size, absent for short chains.
        acf1: Lag-1 autocorrelation.
        split_z: Difference of first- and second-half means in joint SEs.
    """

    name: str = Field(description="Parameter name")
    mean: float = Field(description="Posterior mean")
    sd: float = Field(ge=0.0, description="Posterior standard deviation")
    ess: float | None = Field(default=None, gt=0.0, description="Effective sample size")
    acf1: float | None = Field(default=None, description="Lag-1 autocorrelation")
    split_z: float | None = Field(default=None, description="Split-half mean z score")


class Summary(BaseModel):
    """Per-parameter summaries of one chain."""

    parameters: list[ParameterSummary] = Field(default_factory=list)
    draws: int = Field(default=0, ge=0, description="Number of kept draws")

    def by_name(self) -> dict[str, ParameterSummary]:
        return {p.name: p for p in self.parameters}

    def means(self) -> dict[str, float]:
        return {p.name: p.mean for p in self.parameters}


class ParameterEstimate(BaseModel):
    """Replication-level estimate of one parameter.

    Attributes:
        name: Parameter name.
        truth: True value, when the study simulates data.
        estimate: Mean of the per-replication posterior means.
        se: Standard deviation of the per-replication posterior means; for
            single-dataset studies the Monte Carlo standard error sd / sqrt(ess).
        posterior_sd: Mean posterior SD (single-dataset studies).
    """

    name: str
    truth: float | None = None
    estimate: float
    se: float = Field(ge=0.0)
    posterior_sd: float | None = None


class MethodReport(BaseModel):
    """Aggregated results of one estimation method within a study."""

    method: str = Field(description="bks, geweke or unrestricted")
    parameters: list[ParameterEstimate] = Field(default_factory=list)
    mse: float | None = Field(default=None, ge=0.0, description="Coefficient MSE")
    sigma_mse: float | None = Field(default=None, ge=0.0, description="Covariance MSE")
    seconds_per_iteration: float | None = Field(default=None, ge=0.0)
    replications: int = Field(default=1, ge=1)
    failed: int = Field(default=0, ge=0, description="Replications that raised")


class DeltaPoint(BaseModel):
    """One point of the relative-efficiency sweep."""

    delta: float
    re: float = Field(gt=0.0)
    mse_restricted: float = Field(gt=0.0)
    mse_unrestricted: float = Field(gt=0.0)


class ExperimentReport(BaseModel):
    """Outcome of a replication study."""

    study: str
    scale: str
    seed: int
    replications: int = Field(ge=1)
    iterations: int = Field(ge=1)
    methods: list[MethodReport] = Field(default_factory=list)
    delta_sweep: list[DeltaPoint] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)

    def method(self, name: str) -> MethodReport:
        """Look up a method report by name.

        Raises:
            KeyError: If the study did not run ``name``.
        """
        for report in self.methods:
            if report.method == name:
                return report
        raise KeyError(name)


class RunManifest(BaseModel):
    """Everything needed to re-run a fit or a study.

    Attributes:
        command: CLI command that produced the run.
        config: Resolved configuration.
        seed: Seed of the run.
        version: Library version.
        inputs: sha256 digests of the input files, keyed by path.
        outputs: Files written by the run.
        seconds: Wall-clock duration.
    """

    command: str
    config: dict[str, Any] = Field(default_factory=dict)
    seed: int
    version: str
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: list[str] = Field(default_factory=list)
    seconds: float = Field(default=0.0, ge=0.0)
