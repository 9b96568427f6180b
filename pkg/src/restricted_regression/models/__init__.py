"""Output models for summaries, reports and manifests."""

from restricted_regression.models.outputs import (
    DeltaPoint,
    ExperimentReport,
    MethodReport,
    ParameterEstimate,
    ParameterSummary,
    RunManifest,
    Summary,
)

__all__ = [
    "DeltaPoint",
    "ExperimentReport",
    "MethodReport",
    "ParameterEstimate",
    "ParameterSummary",
    "RunManifest",
    "Summary",
]
