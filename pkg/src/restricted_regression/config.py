"""Configuration dataclasses and runtime settings.

Fit documents (YAML or JSON) are parsed into the dataclasses below by
``config_loader.ConfigLoader``. Runtime defaults that are not part of a
document come from ``SamplerSettings``, read from ``RESTREG_*`` environment
variables or a ``.env`` file.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from restricted_regression.core.errors import ConfigError
from restricted_regression.datasets import shipped_dataset
from restricted_regression.engines import (
    ConjugatePrior,
    ConjugatePriorMV,
    PriorSpec,
    PriorSpecMV,
)
from restricted_regression.numerics import as_matrix, cholesky, ols, residual_cross_product, spd_inverse
from restricted_regression.restrictions import (
    Partition,
    RestrictionSystem,
    load_restrictions,
    system_from_dict,
    system_to_dict,
)

CONFIG_DIR = Path(__file__).resolve().parent / "config"
SCHEMA_VERSION = "1"

ModelKind = Literal["univariate", "multivariate"]


class SamplerSettings(BaseSettings):
    """Runtime defaults.

    Attributes:
        inner_sweeps: Component-wise sweeps per truncated draw.
        burn_in_fraction: Share of iterations discarded when no burn-in is given.
        jobs: Worker processes for replication studies.
        log_level: Default CLI log level.
        desk_replications: Replications of a desk-scale study.
        desk_iterations: Iterations per chain of a desk-scale study.
        rent_data: Location of the user-supplied rent CSV.
    """

    model_config = SettingsConfigDict(
        env_prefix="RESTREG_",
        env_file=".env",
        extra="ignore",
    )

    inner_sweeps: int = Field(default=5, ge=1)
    burn_in_fraction: float = Field(default=0.1, ge=0.0, lt=1.0)
    jobs: int = Field(default=1, ge=1)
    log_level: str = "warning"
    desk_replications: int = Field(default=200, ge=1)
    desk_iterations: int = Field(default=5000, ge=1)
    rent_data: Path | None = Field(
        default=None,
        description="Rent CSV; defaults to rent.csv next to the shipped datasets.",
    )

    def rent_path(self) -> Path:
        return self.rent_data if self.rent_data is not None else shipped_dataset("rent")


def _resolve(path: str | Path, base_dir: Path | None) -> Path:
    p = Path(path).expanduser()
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


@dataclass
class DataConfig:
    """Where the data lives and how to read it.

    Either ``dataset`` (a shipped dataset name) or ``path`` is set.
    """

    path: Path | None = None
    dataset: str | None = None
    format: str = "generic"
    response: list[str] = field(default_factory=list)
    predictors: list[str] = field(default_factory=list)
    intercept: bool = True

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> "DataConfig":
        dataset = data.get("dataset")
        return cls(
            path=_resolve(data["path"], base_dir) if data.get("path") else None,
            dataset=dataset,
            format=data.get("format", dataset if dataset in {"rent", "chemical"} else "generic"),
            response=list(data.get("response", [])),
            predictors=list(data.get("predictors", [])),
            intercept=data.get("intercept", True),
        )

    def resolved_path(self, settings: SamplerSettings) -> Path:
        if self.path is not None:
            return self.path
        if self.dataset == "rent":
            return settings.rent_path()
        if self.dataset:
            return shipped_dataset(self.dataset)
        raise ConfigError("data: either 'path' or 'dataset' is required")

    def to_dict(self, settings: SamplerSettings) -> dict[str, Any]:
        return {
            "path": str(self.resolved_path(settings).resolve()),
            "format": self.format,
            "response": self.response,
            "predictors": self.predictors,
            "intercept": self.intercept,
        }


@dataclass
class RestrictionConfig:
    """Restriction system, inline or from a restriction document."""

    system: RestrictionSystem
    source: Path | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path | None = None) -> "RestrictionConfig":
        if data.get("path"):
            source = _resolve(data["path"], base_dir)
            return cls(system=load_restrictions(source), source=source)
        return cls(system=system_from_dict(data))

    def to_dict(self) -> dict[str, Any]:
        return system_to_dict(self.system)


def _gram_inverse(X: np.ndarray) -> np.ndarray:
    return spd_inverse(cholesky(X.T @ X))


@dataclass
class UnivariatePriorConfig:
    """Normal-inverse-gamma hyperparameters.

    ``mean`` is ``"ols"`` or a full coefficient vector; ``scale`` is
    ``"gram"`` (inverse Gram blocks of the design) or a full p x p matrix
    whose cross-block entries are ignored by the partitioned sampler.
    """

    a: float
    b: float
    mean: str | list[float] = "ols"
    scale: str | list[list[float]] = "gram"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "UnivariatePriorConfig":
        return cls(
            a=float(data["a"]),
            b=float(data["b"]),
            mean=data.get("mean", "ols"),
            scale=data.get("scale", "gram"),
        )

    def _mean(self, X: ArrayLike, Y: ArrayLike) -> np.ndarray:
        return ols(X, Y) if self.mean == "ols" else np.asarray(self.mean, dtype=np.float64)

    def build(self, X: ArrayLike, Y: ArrayLike, partition: Partition) -> PriorSpec:
        """Partitioned prior for the given column split."""
        mean = self._mean(X, Y)
        if self.scale == "gram":
            if self.mean == "ols":
                return PriorSpec.from_ols(X, Y, partition, a=self.a, b=self.b)
            base = PriorSpec.from_ols(X, Y, partition, a=self.a, b=self.b)
            mu_S, mu_S_prime = partition.split(mean)
            return PriorSpec(self.a, self.b, mu_S, mu_S_prime, base.C_S, base.C_S_prime)
        return PriorSpec.from_full(mean, self.scale, partition, a=self.a, b=self.b)

    def conjugate(self, X: ArrayLike, Y: ArrayLike) -> ConjugatePrior:
        """Unpartitioned prior; ``"gram"`` means (X'X)^{-1}."""
        scale = _gram_inverse(as_matrix(X)) if self.scale == "gram" else as_matrix(self.scale)
        return ConjugatePrior(self.a, self.b, self._mean(X, Y), scale)

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b, "mean": self.mean, "scale": self.scale}


@dataclass
class MultivariatePriorConfig:
    """Matrix-normal-inverse-Wishart hyperparameters.

    ``Q`` is ``"ols"`` (residual cross-product over ``q_divisor``, n by
    default) or an explicit k x k matrix.
    """

    r: float
    Q: str | list[list[float]] = "ols"
    q_divisor: float | None = None
    mean: str | list[list[float]] = "ols"
    scale: str = "gram"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "MultivariatePriorConfig":
        return cls(
            r=float(data["r"]),
            Q=data.get("Q", "ols"),
            q_divisor=data.get("q_divisor"),
            mean=data.get("mean", "ols"),
        )

    def build(self, X: ArrayLike, Y: ArrayLike, partition: Partition) -> PriorSpecMV:
        base = PriorSpecMV.from_ols(X, Y, partition, r=self.r, q_divisor=self.q_divisor)
        Q = base.Q if self.Q == "ols" else as_matrix(self.Q)
        if self.mean == "ols":
            M_S, M_S_prime = base.M_S, base.M_S_prime
        else:
            M_S, M_S_prime = partition.split(as_matrix(self.mean))
        return PriorSpecMV(self.r, Q, M_S, M_S_prime, base.D_S, base.D_S_prime)

    def conjugate(self, X: ArrayLike, Y: ArrayLike) -> ConjugatePriorMV:
        design = as_matrix(X)
        divisor = design.shape[0] if self.q_divisor is None else self.q_divisor
        Q = residual_cross_product(design, Y) / divisor if self.Q == "ols" else as_matrix(self.Q)
        M = ols(design, Y) if self.mean == "ols" else as_matrix(self.mean)
        return ConjugatePriorMV(self.r, Q, M, _gram_inverse(design))

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"r": self.r, "Q": self.Q, "mean": self.mean}
        if self.q_divisor is not None:
            doc["q_divisor"] = self.q_divisor
        return doc


@dataclass
class SamplerConfig:
    """Chain length, burn-in, seed and inner sweeps (None = settings default)."""

    iters: int = 10000
    burn_in: int | None = None
    seed: int = 0
    inner_sweeps: int | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SamplerConfig":
        return cls(
            iters=data.get("iters", 10000),
            burn_in=data.get("burn_in"),
            seed=data.get("seed", 0),
            inner_sweeps=data.get("inner_sweeps"),
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"iters": self.iters, "seed": self.seed}
        if self.burn_in is not None:
            doc["burn_in"] = self.burn_in
        if self.inner_sweeps is not None:
            doc["inner_sweeps"] = self.inner_sweeps
        return doc


@dataclass
class FitConfig:
    """A complete fit document."""

    name: str
    model: ModelKind
    data: DataConfig
    restrictions: RestrictionConfig
    prior: UnivariatePriorConfig | MultivariatePriorConfig
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    description: str = ""
    source: Path | None = None

    def to_dict(self, settings: SamplerSettings) -> dict[str, Any]:
        """Self-contained document: absolute data path, inline restrictions."""
        return {
            "name": self.name,
            "description": self.description,
            "model": self.model,
            "data": self.data.to_dict(settings),
            "restrictions": self.restrictions.to_dict(),
            "prior": self.prior.to_dict(),
            "sampler": self.sampler.to_dict(),
        }
