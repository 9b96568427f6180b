"""Fitting a configured model and recording the run.

A fit loads the dataset named by a :class:`FitConfig`, selects the
partition of the restriction system, builds the prior on the data and runs
the matching sampler. Outputs are the chain CSV, the summary JSON and a
run manifest carrying the resolved configuration and input digests.
"""

from dataclasses import dataclass, replace
import hashlib
import logging
from pathlib import Path
from typing import Any

from restricted_regression import __version__
from restricted_regression.config import (
    FitConfig,
    MultivariatePriorConfig,
    SamplerSettings,
    UnivariatePriorConfig,
)
from restricted_regression.core.errors import ConfigError, DatasetError
from restricted_regression.datasets import Dataset, load_dataset
from restricted_regression.diagnostics import summarize, write_chain_csv, write_summary_json
from restricted_regression.engines import Chain, ChainMV, resolve_burn_in, run_chain, run_chain_mv
from restricted_regression.models import RunManifest, Summary
from restricted_regression.restrictions import Partition, select_partition, validate

logger = logging.getLogger(__name__)

CHAIN_FILE = "chain.csv"
SUMMARY_FILE = "summary.json"
MANIFEST_FILE = "manifest.json"


@dataclass
class FitResult:
    """Outcome of one fit.

    Attributes:
        config: Configuration with sampler settings fully resolved.
        dataset: The data the chain was run on.
        partition: Column split used by the sampler.
        chain: All draws, burn-in included.
        summary: Posterior summary of the kept draws.
    """

    config: FitConfig
    dataset: Dataset
    partition: Partition
    chain: Chain | ChainMV
    summary: Summary


def resolve_sampler(
    config: FitConfig,
    settings: SamplerSettings,
    *,
    iters: int | None = None,
    burn_in: int | None = None,
    seed: int | None = None,
    inner_sweeps: int | None = None,
) -> FitConfig:
    """Apply command-line overrides and settings defaults to the sampler block."""
    sampler = config.sampler
    total = iters if iters is not None else sampler.iters
    chosen_burn_in = burn_in if burn_in is not None else sampler.burn_in
    resolved = replace(
        sampler,
        iters=total,
        burn_in=resolve_burn_in(total, chosen_burn_in, settings.burn_in_fraction),
        seed=seed if seed is not None else sampler.seed,
        inner_sweeps=inner_sweeps or sampler.inner_sweeps or settings.inner_sweeps,
    )
    return replace(config, sampler=resolved)


def load_fit_data(config: FitConfig, settings: SamplerSettings) -> Dataset:
    data = config.data
    return load_dataset(
        data.resolved_path(settings),
        data.format,
        response=data.response or None,
        predictors=data.predictors or None,
        intercept=data.intercept,
    )


def fit_univariate(config: FitConfig, settings: SamplerSettings | None = None) -> FitResult:
    """Run the single-response sampler described by ``config``.

    Raises:
        ConfigError: If the document does not describe a univariate model.
        DatasetError: If the data cannot be loaded.
        ModelError: If the restrictions or the prior are degenerate.
    """
    settings = settings or SamplerSettings()
    if config.model != "univariate" or not isinstance(config.prior, UnivariatePriorConfig):
        raise ConfigError("model: expected a univariate fit with prior 'a' and 'b'")
    config = resolve_sampler(config, settings)
    system = config.restrictions.system
    validate(system)
    data = load_fit_data(config, settings)
    if data.k != 1:
        raise DatasetError(f"univariate fit needs one response column, got {data.k}")
    partition = select_partition(system)
    sampler = config.sampler
    chain = run_chain(
        data,
        system,
        config.prior.build(data.X, data.Y, partition),
        sampler.iters,
        sampler.burn_in,
        sampler.seed,
        inner_sweeps=sampler.inner_sweeps or settings.inner_sweeps,
        partition=partition,
    )
    return FitResult(config, data, partition, chain, summarize(chain))


def fit_multivariate(config: FitConfig, settings: SamplerSettings | None = None) -> FitResult:
    """Run the multi-response sampler described by ``config``.

    Raises:
        ConfigError: If the document does not describe a multivariate model.
        DatasetError: If the data cannot be loaded.
        ModelError: If the restrictions or the prior are degenerate.
    """
    settings = settings or SamplerSettings()
    if config.model != "multivariate" or not isinstance(config.prior, MultivariatePriorConfig):
        raise ConfigError("model: expected a multivariate fit with prior 'r'")
    config = resolve_sampler(config, settings)
    system = config.restrictions.system
    validate(system)
    data = load_fit_data(config, settings)
    partition = select_partition(system)
    sampler = config.sampler
    chain = run_chain_mv(
        data,
        system,
        config.prior.build(data.X, data.Y, partition),
        sampler.iters,
        sampler.burn_in,
        sampler.seed,
        inner_sweeps=sampler.inner_sweeps or settings.inner_sweeps,
        partition=partition,
    )
    return FitResult(config, data, partition, chain, summarize(chain))


def write_fit_outputs(result: FitResult, out_dir: str | Path) -> list[Path]:
    """Write the chain CSV and the summary JSON."""
    out = Path(out_dir)
    return [
        write_chain_csv(result.chain, out / CHAIN_FILE),
        write_summary_json(result.summary, out / SUMMARY_FILE),
    ]


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as f:
        for block in iter(lambda: f.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def build_manifest(
    command: str,
    config: dict[str, Any],
    seed: int,
    *,
    inputs: list[Path],
    outputs: list[Path],
    seconds: float,
) -> RunManifest:
    """Manifest of a finished run; input digests are taken now."""
    return RunManifest(
        command=command,
        config=config,
        seed=seed,
        version=__version__,
        inputs={str(p.resolve()): sha256_file(p) for p in inputs if p.exists()},
        outputs=[str(p) for p in outputs],
        seconds=max(seconds, 0.0),
    )


def write_manifest(manifest: RunManifest, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    return path


def read_manifest(path: str | Path) -> RunManifest:
    """Read a manifest and confirm its inputs are unchanged.

    Raises:
        ConfigError: If the file is missing, invalid, or an input's digest
            no longer matches.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"manifest not found: {path}")
    try:
        manifest = RunManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise ConfigError(f"invalid manifest {path.name}: {exc}") from exc
    for input_path, expected in manifest.inputs.items():
        if not Path(input_path).exists():
            raise ConfigError(f"manifest input missing: {input_path}")
        if sha256_file(input_path) != expected:
            raise ConfigError(f"manifest input changed since the run: {input_path}")
    return manifest
