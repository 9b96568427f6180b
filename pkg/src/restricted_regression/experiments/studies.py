"""Replication studies.

Simulation studies draw a dataset per replication (fresh covariates by
default, or one fixed design), run every requested method on it and
aggregate the per-replication posterior means into estimates, standard
errors and mean squared errors. Replication ``i`` owns the stream seeded
with ``seed + i`` for its data and its chains, so a study is reproducible
from its seed whichever executor runs it. The fixed design, when used, is
drawn from the stream ``seed + replications``.

Real-data analyses run one chain per method on a single dataset.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
import pandas as pd

from restricted_regression.config import (
    MultivariatePriorConfig,
    SamplerSettings,
    UnivariatePriorConfig,
)
from restricted_regression.core.errors import (
    InvalidParameterError,
    ModelError,
    NotSquareError,
    ShapeMismatchError,
    UnknownStudyError,
)
from restricted_regression.datasets import Dataset, load_dataset, shipped_dataset
from restricted_regression.diagnostics import summarize, write_chain_csv, write_summary_json
from restricted_regression.distributions import DEFAULT_INNER_SWEEPS, RngStream
from restricted_regression.engines import (
    Chain,
    ChainMV,
    beta_matrix_names,
    beta_names,
    conjugate_posterior,
    conjugate_posterior_mv,
    geweke_baseline_chain,
    resolve_burn_in,
    run_chain,
    run_chain_mv,
    sigma_names,
)
from restricted_regression.executors import (
    ReplicationExecutor,
    ReplicationResult,
    create_executor,
)
from restricted_regression.executors.base import TaskFn
from restricted_regression.experiments import catalog
from restricted_regression.experiments.metrics import mse, relative_efficiency
from restricted_regression.experiments.simulation import (
    simulate_multivariate,
    simulate_univariate,
    standard_design,
)
from restricted_regression.models import (
    DeltaPoint,
    ExperimentReport,
    MethodReport,
    ParameterEstimate,
)
from restricted_regression.restrictions import RestrictionSystem, select_partition

logger = logging.getLogger(__name__)

REAL_DATA_ITERATIONS = 10_000
FULL_SCALE_ITERATIONS = 10_000


class Scale(str, Enum):
    """Size of a replication run."""

    DESK = "desk"
    PAPER = "paper"


class Method(str, Enum):
    """Estimation methods a study can compare."""

    BKS = "bks"
    GEWEKE = "geweke"
    UNRESTRICTED = "unrestricted"


class Study(str, Enum):
    """Named replication studies."""

    EXAMPLE1_R1 = "example1-r1"
    EXAMPLE1_R2 = "example1-r2"
    DELTA_SWEEP = "delta-sweep"
    EXAMPLE2 = "example2"
    RENT = "rent"
    CHEMICAL = "chemical"

    @classmethod
    def parse(cls, name: "str | Study") -> "Study":
        """Look a study up by name.

        Raises:
            UnknownStudyError: If no study has this name.
        """
        try:
            return cls(name)
        except ValueError as exc:
            choices = ", ".join(s.value for s in cls)
            raise UnknownStudyError(f"unknown study '{name}'; choose one of {choices}") from exc


FULL_SCALE_REPLICATIONS = {
    Study.EXAMPLE1_R1: 20_000,
    Study.EXAMPLE1_R2: 20_000,
    Study.DELTA_SWEEP: 20_000,
    Study.EXAMPLE2: 2_000,
}


@dataclass(frozen=True, eq=False)
class SimulationConfig:
    """Settings of a simulation study.

    Attributes:
        n: Observations per simulated dataset.
        truth: True coefficient vector (p,) or matrix (p, k).
        noise: True error variance (scalar) or covariance (k x k).
        system: Restriction system of the partitioned sampler.
        prior: Hyperparameter policy, applied to every simulated dataset.
        methods: Methods run on every replication, in this order.
        iterations: Iterations per chain.
        burn_in: Discarded draws per chain; 10% of ``iterations`` if None.
        replications: Number of simulated datasets, >= 1.
        seed: Base seed; replication i uses ``seed + i``.
        inner_sweeps: Component-wise sweeps per truncated draw.
        fresh_design: Draw new covariates per replication.
        geweke_system: Square system for the baseline sampler.
    """

    n: int
    truth: NDArray[np.float64]
    noise: NDArray[np.float64]
    system: RestrictionSystem
    prior: UnivariatePriorConfig | MultivariatePriorConfig
    methods: tuple[Method, ...] = (Method.BKS,)
    iterations: int = FULL_SCALE_ITERATIONS
    burn_in: int | None = None
    replications: int = 1
    seed: int = 0
    inner_sweeps: int = DEFAULT_INNER_SWEEPS
    fresh_design: bool = True
    geweke_system: RestrictionSystem | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "truth", np.asarray(self.truth, dtype=np.float64))
        object.__setattr__(self, "noise", np.asarray(self.noise, dtype=np.float64))
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        if self.replications < 1:
            raise InvalidParameterError(f"replications must be >= 1, got {self.replications}")
        if self.n < 1:
            raise InvalidParameterError(f"n must be >= 1, got {self.n}")
        if not self.methods:
            raise InvalidParameterError("a study needs at least one method")
        if self.multivariate != isinstance(self.prior, MultivariatePriorConfig):
            raise ShapeMismatchError("prior policy does not match the shape of the true coefficients")
        if Method.GEWEKE in self.methods:
            if self.multivariate:
                raise ShapeMismatchError("the baseline sampler handles a single response only")
            square = self.geweke_system
            if square is None or square.q != square.p:
                raise NotSquareError("the baseline sampler needs a square restriction system")
        resolve_burn_in(self.iterations, self.burn_in)

    @property
    def multivariate(self) -> bool:
        return self.truth.ndim == 2  # noqa: PLR2004

    @property
    def p(self) -> int:
        return int(self.truth.shape[0])

    def parameter_names(self) -> list[str]:
        """Names in chain CSV order: variance terms, then coefficients."""
        if self.multivariate:
            k = int(self.truth.shape[1])
            return [*sigma_names(k), *beta_matrix_names(self.p, k)]
        return ["sigma2", *beta_names(self.p)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "methods": [m.value for m in self.methods],
            "iterations": self.iterations,
            "burn_in": self.burn_in,
            "replications": self.replications,
            "seed": self.seed,
            "inner_sweeps": self.inner_sweeps,
            "fresh_design": self.fresh_design,
        }


@dataclass(frozen=True)
class RealDataConfig:
    """Settings of a single-dataset analysis."""

    iterations: int = REAL_DATA_ITERATIONS
    burn_in: int | None = None
    seed: int = 0
    inner_sweeps: int = DEFAULT_INNER_SWEEPS
    data_path: Path | None = None

    def __post_init__(self) -> None:
        resolve_burn_in(self.iterations, self.burn_in)


@dataclass
class ReplicationEstimate:
    """Posterior means of one method on one simulated dataset."""

    method: Method
    sigma: NDArray[np.float64]
    beta: NDArray[np.float64]
    seconds_per_iteration: float | None = None


@dataclass
class StudyResult:
    """Report of a study plus what backs it.

    Attributes:
        report: Aggregated results.
        chains: Chains of single-dataset analyses, keyed by method.
        replications: One row per replication, method and parameter.
        config: Settings needed to re-run the study.
    """

    report: ExperimentReport
    chains: dict[str, Chain | ChainMV] = field(default_factory=dict)
    replications: pd.DataFrame = field(default_factory=pd.DataFrame)
    config: dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# One replication
# ---------------------------------------------------------------------------


def _simulate(config: SimulationConfig, rng: RngStream, design: ArrayLike | None) -> Dataset:
    if config.multivariate:
        return simulate_multivariate(config.truth, config.noise, config.n, rng, design=design)
    return simulate_univariate(config.truth, float(config.noise), config.n, rng, design=design)


def _fit_univariate(
    method: Method,
    config: SimulationConfig,
    prior_config: UnivariatePriorConfig,
    data: Dataset,
    rng: RngStream,
) -> ReplicationEstimate:
    if method is Method.UNRESTRICTED:
        posterior = conjugate_posterior(data.X, data.Y, prior_config.conjugate(data.X, data.Y))
        return ReplicationEstimate(method, np.asarray(posterior.sigma2_mean), posterior.mean)
    partition = select_partition(config.system)
    prior = prior_config.build(data.X, data.Y, partition)
    if method is Method.GEWEKE:
        if config.geweke_system is None:
            raise NotSquareError("the baseline sampler needs a square restriction system")
        chain = geweke_baseline_chain(
            data,
            config.geweke_system,
            prior.as_conjugate(partition),
            config.iterations,
            config.burn_in,
            inner_sweeps=config.inner_sweeps,
            rng=rng,
        )
    else:
        chain = run_chain(
            data,
            config.system,
            prior,
            config.iterations,
            config.burn_in,
            inner_sweeps=config.inner_sweeps,
            partition=partition,
            rng=rng,
        )
    sigma2, beta = chain.posterior_mean()
    return ReplicationEstimate(method, np.asarray(sigma2), beta, chain.seconds_per_iteration)


def _fit_multivariate(
    method: Method,
    config: SimulationConfig,
    prior_config: MultivariatePriorConfig,
    data: Dataset,
    rng: RngStream,
) -> ReplicationEstimate:
    if method is Method.UNRESTRICTED:
        posterior = conjugate_posterior_mv(data.X, data.Y, prior_config.conjugate(data.X, data.Y))
        return ReplicationEstimate(method, posterior.sigma_mean, posterior.mean)
    partition = select_partition(config.system)
    chain = run_chain_mv(
        data,
        config.system,
        prior_config.build(data.X, data.Y, partition),
        config.iterations,
        config.burn_in,
        inner_sweeps=config.inner_sweeps,
        partition=partition,
        rng=rng,
    )
    sigma, beta = chain.posterior_mean()
    return ReplicationEstimate(method, sigma, beta, chain.seconds_per_iteration)


def _fit(method: Method, config: SimulationConfig, data: Dataset, rng: RngStream) -> ReplicationEstimate:
    if isinstance(config.prior, MultivariatePriorConfig):
        return _fit_multivariate(method, config, config.prior, data, rng)
    return _fit_univariate(method, config, config.prior, data, rng)


def replicate_once(
    payload: tuple[SimulationConfig, int, NDArray[np.float64] | None],
) -> list[ReplicationEstimate]:
    """Simulate replication ``index`` and run every method of the study on it."""
    config, index, design = payload
    rng = RngStream(config.seed).spawn(index)
    data = _simulate(config, rng, design)
    return [_fit(method, config, data, rng) for method in config.methods]


def replicate_sweep(
    payload: tuple[SimulationConfig, int, NDArray[np.float64] | None, tuple[float, ...]],
) -> tuple[ReplicationEstimate, list[ReplicationEstimate]]:
    """Unrestricted estimate plus one restricted estimate per shift, on shared data."""
    config, index, design, deltas = payload
    rng = RngStream(config.seed).spawn(index)
    data = _simulate(config, rng, design)
    unrestricted = _fit(Method.UNRESTRICTED, config, data, rng)
    restricted = [
        _fit(Method.BKS, replace(config, system=catalog.restriction1(delta)), data, rng)
        for delta in deltas
    ]
    return unrestricted, restricted


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


def _fixed_design(config: SimulationConfig) -> NDArray[np.float64] | None:
    if config.fresh_design:
        return None
    return standard_design(config.n, config.p, RngStream(config.seed).spawn(config.replications))


def _run(
    fn: TaskFn, payloads: Sequence[Any], executor: ReplicationExecutor | None
) -> list[ReplicationResult]:
    if executor is not None:
        return executor.map(fn, payloads)
    with create_executor(1) as serial:
        return serial.map(fn, payloads)


def _successes(results: list[ReplicationResult]) -> list[ReplicationResult]:
    ok = [r for r in results if r.success]
    failed = [r for r in results if not r.success]
    if not ok:
        raise ModelError(f"all {len(results)} replications failed; first error: {failed[0].error}")
    if failed:
        logger.warning(
            "replications failed",
            extra={"failed": len(failed), "total": len(results), "first_error": failed[0].error},
        )
    return ok


def _flatten(sigma: NDArray[np.float64], beta: NDArray[np.float64]) -> NDArray[np.float64]:
    """Stack (m, ...) variance and coefficient estimates into chain column order."""
    m = sigma.shape[0]
    if beta.ndim == 3:  # noqa: PLR2004
        return np.column_stack([sigma.reshape(m, -1), beta.transpose(0, 2, 1).reshape(m, -1)])
    return np.column_stack([sigma.reshape(m, 1), beta])


def _aggregate(
    config: SimulationConfig, estimates: list[ReplicationEstimate], failed: int
) -> MethodReport:
    sigma = np.stack([e.sigma for e in estimates])
    beta = np.stack([e.beta for e in estimates])
    flat = _flatten(sigma, beta)
    truth = _flatten(config.noise[np.newaxis], config.truth[np.newaxis])[0]
    m = flat.shape[0]
    means = flat.mean(axis=0)
    ses = flat.std(axis=0, ddof=1) if m > 1 else np.zeros(flat.shape[1])
    seconds = [e.seconds_per_iteration for e in estimates if e.seconds_per_iteration is not None]
    return MethodReport(
        method=estimates[0].method.value,
        parameters=[
            ParameterEstimate(name=name, truth=float(t), estimate=float(mu), se=float(s))
            for name, t, mu, s in zip(config.parameter_names(), truth, means, ses, strict=True)
        ],
        mse=mse(beta, config.truth),
        sigma_mse=mse(sigma, config.noise),
        seconds_per_iteration=float(np.mean(seconds)) if seconds else None,
        replications=m,
        failed=failed,
    )


def _rows(
    config: SimulationConfig,
    index: int,
    estimates: list[ReplicationEstimate],
    delta: float | None = None,
) -> list[dict[str, Any]]:
    names = config.parameter_names()
    rows = []
    for estimate in estimates:
        flat = _flatten(estimate.sigma[np.newaxis], estimate.beta[np.newaxis])[0]
        rows.extend(
            {
                **({"delta": delta} if delta is not None else {}),
                "method": estimate.method.value,
                "replication": index + 1,
                "parameter": name,
                "estimate": float(value),
            }
            for name, value in zip(names, flat, strict=True)
        )
    return rows


def run_simulation(
    config: SimulationConfig,
    study: str,
    scale: Scale = Scale.DESK,
    executor: ReplicationExecutor | None = None,
) -> StudyResult:
    """Run and aggregate a simulation study.

    Raises:
        ModelError: If every replication failed.
    """
    design = _fixed_design(config)
    logger.info(
        "study started",
        extra={"study": study, "replications": config.replications, "iterations": config.iterations},
    )
    results = _run(
        replicate_once, [(config, i, design) for i in range(config.replications)], executor
    )
    ok = _successes(results)
    failed = len(results) - len(ok)
    methods = [
        _aggregate(config, [r.value[j] for r in ok], failed) for j in range(len(config.methods))
    ]
    rows = [row for r in ok for row in _rows(config, r.index, r.value)]
    report = ExperimentReport(
        study=study,
        scale=Scale(scale).value,
        seed=config.seed,
        replications=config.replications,
        iterations=config.iterations,
        methods=methods,
        metadata={"n": config.n, "fresh_design": config.fresh_design},
    )
    return StudyResult(report=report, replications=pd.DataFrame(rows), config=config.to_dict())


def example1_config(restriction: int, **overrides: Any) -> SimulationConfig:
    """Example 1 settings for Restriction 1 (BKS) or 2 (BKS and baseline).

    Raises:
        InvalidParameterError: If ``restriction`` is not 1 or 2.
    """
    if restriction == 1:
        base = {"system": catalog.restriction1(), "methods": (Method.BKS,)}
    elif restriction == 2:  # noqa: PLR2004
        base = {
            "system": catalog.restriction2(),
            "methods": (Method.BKS, Method.GEWEKE),
            "geweke_system": catalog.restriction2_square(),
        }
    else:
        raise InvalidParameterError(f"restriction must be 1 or 2, got {restriction}")
    return SimulationConfig(
        n=catalog.EXAMPLE1_N,
        truth=catalog.EXAMPLE1_BETA,
        noise=np.asarray(catalog.EXAMPLE1_SIGMA2),
        prior=UnivariatePriorConfig(a=catalog.EXAMPLE1_A, b=catalog.EXAMPLE1_B),
        **{**base, **overrides},
    )


def example2_config(**overrides: Any) -> SimulationConfig:
    return SimulationConfig(
        n=catalog.EXAMPLE2_N,
        truth=catalog.EXAMPLE2_B,
        noise=catalog.EXAMPLE2_SIGMA,
        system=catalog.example2_system(),
        prior=MultivariatePriorConfig(r=catalog.EXAMPLE2_R),
        **overrides,
    )


def run_example1(
    restriction: int, config: SimulationConfig, executor: ReplicationExecutor | None = None
) -> StudyResult:
    """Example 1 under Restriction 1 or 2.

    ``config`` supplies replication settings; its system and methods must
    come from :func:`example1_config` for the chosen restriction.
    """
    name = Study.EXAMPLE1_R1 if restriction == 1 else Study.EXAMPLE1_R2
    return run_simulation(config, name.value, executor=executor)


def run_example2(config: SimulationConfig, executor: ReplicationExecutor | None = None) -> StudyResult:
    return run_simulation(config, Study.EXAMPLE2.value, executor=executor)


def run_delta_sweep(
    deltas: ArrayLike,
    config: SimulationConfig,
    executor: ReplicationExecutor | None = None,
) -> StudyResult:
    """Relative efficiency of the restricted estimator as Restriction 1 shifts.

    The third bound of Restriction 1 becomes ``2.2 + delta``. Every shift is
    fitted on the same simulated datasets, against one unrestricted
    conjugate posterior mean per dataset.

    Raises:
        InvalidParameterError: If a shift lies outside [-1, 1] or none is given.
    """
    grid = tuple(float(d) for d in np.asarray(deltas, dtype=np.float64).ravel())
    if not grid:
        raise InvalidParameterError("the sweep needs at least one shift")
    if any(not -1.0 <= d <= 1.0 for d in grid):
        raise InvalidParameterError(f"shifts must lie in [-1, 1], got {grid}")

    design = _fixed_design(config)
    logger.info("sweep started", extra={"shifts": len(grid), "replications": config.replications})
    payloads = [(config, i, design, grid) for i in range(config.replications)]
    ok = _successes(_run(replicate_sweep, payloads, executor))
    failed = config.replications - len(ok)

    unrestricted = [r.value[0] for r in ok]
    mse_unrestricted = mse(np.stack([e.beta for e in unrestricted]), config.truth)
    points = []
    rows = [row for r in ok for row in _rows(config, r.index, [r.value[0]])]
    for j, delta in enumerate(grid):
        restricted = [r.value[1][j] for r in ok]
        mse_restricted = mse(np.stack([e.beta for e in restricted]), config.truth)
        points.append(
            DeltaPoint(
                delta=delta,
                re=relative_efficiency(mse_unrestricted, mse_restricted),
                mse_restricted=mse_restricted,
                mse_unrestricted=mse_unrestricted,
            )
        )
        rows.extend(row for r in ok for row in _rows(config, r.index, [r.value[1][j]], delta))

    report = ExperimentReport(
        study=Study.DELTA_SWEEP.value,
        scale=Scale.DESK.value,
        seed=config.seed,
        replications=config.replications,
        iterations=config.iterations,
        methods=[_aggregate(config, unrestricted, failed)],
        delta_sweep=points,
        metadata={"n": config.n, "fresh_design": config.fresh_design},
    )
    return StudyResult(
        report=report,
        replications=pd.DataFrame(rows),
        config={**config.to_dict(), "deltas": list(grid)},
    )


# ---------------------------------------------------------------------------
# Real data
# ---------------------------------------------------------------------------


def _chain_estimates(chain: Chain | ChainMV) -> MethodReport:
    summary = summarize(chain)
    parameters = [
        ParameterEstimate(
            name=s.name,
            estimate=s.mean,
            se=s.sd / math.sqrt(s.ess if s.ess is not None else summary.draws),
            posterior_sd=s.sd,
        )
        for s in summary.parameters
    ]
    return MethodReport(
        method=chain.method,
        parameters=parameters,
        seconds_per_iteration=chain.seconds_per_iteration,
    )


def _real_data_result(
    study: Study, config: RealDataConfig, chains: list[Chain | ChainMV], data: Dataset
) -> StudyResult:
    report = ExperimentReport(
        study=study.value,
        scale=Scale.PAPER.value,
        seed=config.seed,
        replications=1,
        iterations=config.iterations,
        methods=[_chain_estimates(chain) for chain in chains],
        metadata={"n": data.n, "source": str(data.source or ""), "provenance": data.provenance},
    )
    return StudyResult(
        report=report,
        chains={chain.method: chain for chain in chains},
        config={
            "iterations": config.iterations,
            "burn_in": config.burn_in,
            "seed": config.seed,
            "inner_sweeps": config.inner_sweeps,
            "data_path": str(data.source) if data.source else None,
        },
    )


def run_rent_analysis(config: RealDataConfig, data: Dataset | None = None) -> StudyResult:
    """Partitioned and baseline samplers on the rent data.

    Raises:
        DatasetError: If the rent CSV is missing.
    """
    if data is None:
        data = load_dataset(config.data_path or shipped_dataset("rent"), "rent")
    prior_config = UnivariatePriorConfig(
        a=catalog.RENT_A, b=catalog.RENT_B, mean=catalog.RENT_PRIOR_MEAN.tolist()
    )
    system = catalog.rent_system()
    partition = select_partition(system)
    rng = RngStream(config.seed)
    bks = run_chain(
        data,
        system,
        prior_config.build(data.X, data.Y, partition),
        config.iterations,
        config.burn_in,
        inner_sweeps=config.inner_sweeps,
        partition=partition,
        rng=rng,
    )
    geweke = geweke_baseline_chain(
        data,
        catalog.rent_square_system(),
        prior_config.conjugate(data.X, data.Y),
        config.iterations,
        config.burn_in,
        inner_sweeps=config.inner_sweeps,
        rng=rng,
    )
    return _real_data_result(Study.RENT, config, [bks, geweke], data)


def run_chemical_analysis(config: RealDataConfig, data: Dataset | None = None) -> StudyResult:
    """Multivariate partitioned sampler on the chemical reaction data."""
    if data is None:
        data = load_dataset(config.data_path or shipped_dataset("chemical"), "chemical")
    # Q = RSS / n
    prior_config = MultivariatePriorConfig(r=catalog.CHEMICAL_R)
    system = catalog.chemical_system()
    partition = select_partition(system)
    chain = run_chain_mv(
        data,
        system,
        prior_config.build(data.X, data.Y, partition),
        config.iterations,
        config.burn_in,
        inner_sweeps=config.inner_sweeps,
        partition=partition,
        rng=RngStream(config.seed),
    )
    return _real_data_result(Study.CHEMICAL, config, [chain], data)


# ---------------------------------------------------------------------------
# Dispatch and output
# ---------------------------------------------------------------------------


def run_study(
    study: Study | str,
    scale: Scale | str = Scale.DESK,
    seed: int = 0,
    *,
    settings: SamplerSettings | None = None,
    executor: ReplicationExecutor | None = None,
    replications: int | None = None,
    iterations: int | None = None,
    burn_in: int | None = None,
    inner_sweeps: int | None = None,
    fresh_design: bool = True,
    data_path: Path | None = None,
) -> StudyResult:
    """Run a named study at desk or paper scale.

    Explicit ``replications``/``iterations`` override the scale defaults:
    desk scale takes them from ``settings``, paper scale uses the
    published counts. Real-data analyses always default to 10^4 iterations.

    Raises:
        UnknownStudyError: If ``study`` is not a known study.
    """
    study = Study.parse(study)
    scale = Scale(scale)
    settings = settings or SamplerSettings()
    sweeps = inner_sweeps or settings.inner_sweeps

    if study in {Study.RENT, Study.CHEMICAL}:
        iters = iterations or REAL_DATA_ITERATIONS
        real = RealDataConfig(
            iterations=iters,
            burn_in=resolve_burn_in(iters, burn_in, settings.burn_in_fraction),
            seed=seed,
            inner_sweeps=sweeps,
            data_path=data_path or (settings.rent_path() if study is Study.RENT else None),
        )
        if study is Study.RENT:
            return run_rent_analysis(real)
        return run_chemical_analysis(real)

    if scale is Scale.PAPER:
        reps = replications or FULL_SCALE_REPLICATIONS[study]
        iters = iterations or FULL_SCALE_ITERATIONS
    else:
        reps = replications or settings.desk_replications
        iters = iterations or settings.desk_iterations
    overrides = {
        "replications": reps,
        "iterations": iters,
        "burn_in": resolve_burn_in(iters, burn_in, settings.burn_in_fraction),
        "seed": seed,
        "inner_sweeps": sweeps,
        "fresh_design": fresh_design,
    }

    owned = executor is None
    pool = executor or create_executor(settings.jobs)
    try:
        if study is Study.DELTA_SWEEP:
            result = run_delta_sweep(catalog.DELTA_GRID, example1_config(1, **overrides), pool)
        elif study is Study.EXAMPLE2:
            result = run_example2(example2_config(**overrides), pool)
        else:
            restriction = 1 if study is Study.EXAMPLE1_R1 else 2
            result = run_example1(restriction, example1_config(restriction, **overrides), pool)
    finally:
        if owned:
            pool.shutdown()
    result.report.scale = scale.value
    return result


def write_study_outputs(result: StudyResult, out_dir: str | Path) -> list[Path]:
    """Write ``report.json`` plus replication, sweep, chain and summary files.

    Returns:
        Paths written, report first.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report_path = out / "report.json"
    report_path.write_text(result.report.model_dump_json(indent=2), encoding="utf-8")
    written = [report_path]
    if not result.replications.empty:
        path = out / "replications.csv"
        result.replications.to_csv(path, index=False)
        written.append(path)
    if result.report.delta_sweep:
        path = out / "delta_sweep.csv"
        pd.DataFrame(
            {
                "delta": [p.delta for p in result.report.delta_sweep],
                "re": [p.re for p in result.report.delta_sweep],
            }
        ).to_csv(path, index=False)
        written.append(path)
    for method, chain in result.chains.items():
        written.append(write_chain_csv(chain, out / f"chain_{method}.csv"))
        written.append(write_summary_json(summarize(chain), out / f"summary_{method}.json"))
    return written
