"""Restricted regression CLI."""

from collections.abc import Callable, Iterator
from contextlib import contextmanager
import logging
from pathlib import Path
import time
from typing import Annotated, Any

from dotenv import load_dotenv
from rich.markup import escape
import typer

from restricted_regression import __version__
from restricted_regression.cli.console import err_console, print_error
from restricted_regression.cli.output import print_report, print_summary, print_written
from restricted_regression.config import SCHEMA_VERSION, FitConfig, SamplerSettings
from restricted_regression.config_loader import ConfigLoader
from restricted_regression.core.errors import (
    ConfigError,
    ConfigValidationError,
    RestrictedRegressionError,
)
from restricted_regression.core.logging import level_from_name, setup_logging
from restricted_regression.diagnostics import (
    read_chain_csv,
    summarize_frame,
    write_acf_csv,
    write_summary_json,
)
from restricted_regression.executors import create_executor
from restricted_regression.experiments import Scale, Study, run_study, write_study_outputs
from restricted_regression.pipeline import (
    MANIFEST_FILE,
    FitResult,
    build_manifest,
    fit_multivariate,
    fit_univariate,
    read_manifest,
    resolve_sampler,
    write_fit_outputs,
    write_manifest,
)

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_OUT_DIR = Path("runs")
DEFAULT_MAX_LAG = 50

app = typer.Typer(
    name="restricted-regression",
    help="Bayesian linear regression under linear inequality restrictions",
    no_args_is_help=True,
    rich_markup_mode="rich",
)

LogLevelOption = Annotated[
    str | None,
    typer.Option(
        "--log-level",
        "-l",
        help="Logging level (debug, info, warning, error)",
    ),
]
OutDirOption = Annotated[
    Path | None,
    typer.Option("--out-dir", "-o", help="Directory for output files"),
]
ManifestOption = Annotated[
    Path | None,
    typer.Option("--from-manifest", help="Re-run exactly what a manifest records"),
]
ItersOption = Annotated[int | None, typer.Option("--iters", min=1, help="Gibbs iterations")]
BurnInOption = Annotated[
    int | None, typer.Option("--burn-in", min=0, help="Discarded leading draws")
]
SeedOption = Annotated[int | None, typer.Option("--seed", min=0, help="Random seed")]
SweepsOption = Annotated[
    int | None,
    typer.Option("--inner-sweeps", min=1, help="Component sweeps per truncated draw"),
]


def _setup(log_level: str | None) -> SamplerSettings:
    settings = SamplerSettings()
    setup_logging(level_from_name(log_level or settings.log_level))
    return settings


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map library errors to exit codes: 2 config, 3 model, 1 anything else."""
    try:
        yield
    except typer.Exit:
        raise
    except RestrictedRegressionError as exc:
        print_error(str(exc))
        raise typer.Exit(exc.exit_code) from exc
    except Exception as exc:  # noqa: BLE001
        logger.exception("unexpected failure")
        print_error(f"internal error: {type(exc).__name__}: {exc}")
        raise typer.Exit(1) from exc


def _version_callback(value: bool) -> None:  # noqa: FBT001
    if value:
        err_console.print(f"restricted-regression {__version__} (config schema {SCHEMA_VERSION})")
        raise typer.Exit


@app.callback()
def main_callback(
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            callback=_version_callback,
            is_eager=True,
            help="Show the version and exit",
        ),
    ] = False,
) -> None:
    """Partitioned collapsed Gibbs sampling for restricted regression models."""


def load_fit_config(config: str) -> FitConfig:
    """Load a fit config from a file path or a shipped config name.

    Raises:
        ConfigError: If neither a file nor a shipped config has that name.
    """
    path = Path(config)
    if path.exists():
        return ConfigLoader.load(path)
    if config in ConfigLoader.available():
        return ConfigLoader.load_by_name(config)
    raise ConfigError(f"config file not found: {config}")


def _config_from_manifest(manifest_path: Path) -> FitConfig:
    manifest = read_manifest(manifest_path)
    errors = ConfigLoader.validate(manifest.config)
    if errors:
        raise ConfigValidationError(manifest_path.name, errors)
    return ConfigLoader.parse(manifest.config)


def _run_fit(
    command: str,
    fit: Callable[[FitConfig, SamplerSettings], FitResult],
    config: str | None,
    *,
    settings: SamplerSettings,
    out_dir: Path | None,
    from_manifest: Path | None,
    overrides: dict[str, int | None],
) -> None:
    started = time.perf_counter()
    if from_manifest is not None:
        fit_config = _config_from_manifest(from_manifest)
    elif config is not None:
        fit_config = load_fit_config(config)
    else:
        raise ConfigError("give a config file or --from-manifest")
    fit_config = resolve_sampler(fit_config, settings, **overrides)

    with err_console.status(f"[info]Sampling {fit_config.name}...[/info]", spinner="dots"):
        result = fit(fit_config, settings)

    target = out_dir or DEFAULT_OUT_DIR / fit_config.name
    written = write_fit_outputs(result, target)
    inputs = [p for p in (fit_config.source, result.dataset.source, fit_config.restrictions.source) if p]
    manifest = build_manifest(
        command,
        result.config.to_dict(settings),
        result.config.sampler.seed,
        inputs=inputs,
        outputs=written,
        seconds=time.perf_counter() - started,
    )
    written.append(write_manifest(manifest, target / MANIFEST_FILE))
    print_summary(result.summary, title=f"{fit_config.name} ({result.chain.method})")
    print_written(written)


@app.command("fit-uni")
def fit_uni(
    config: Annotated[
        str | None, typer.Argument(help="Fit config file or shipped config name")
    ] = None,
    iters: ItersOption = None,
    burn_in: BurnInOption = None,
    seed: SeedOption = None,
    inner_sweeps: SweepsOption = None,
    out_dir: OutDirOption = None,
    from_manifest: ManifestOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Fit a single-response restricted regression.

    Writes chain.csv, summary.json and manifest.json to the output
    directory (default runs/<config name>).

    Examples:
        restricted-regression fit-uni rent --seed 7
        restricted-regression fit-uni my_fit.yaml --iters 20000 -o out/
    """
    settings = _setup(log_level)
    with _exit_codes():
        _run_fit(
            "fit-uni",
            fit_univariate,
            config,
            settings=settings,
            out_dir=out_dir,
            from_manifest=from_manifest,
            overrides={"iters": iters, "burn_in": burn_in, "seed": seed, "inner_sweeps": inner_sweeps},
        )


@app.command("fit-multi")
def fit_multi(
    config: Annotated[
        str | None, typer.Argument(help="Fit config file or shipped config name")
    ] = None,
    iters: ItersOption = None,
    burn_in: BurnInOption = None,
    seed: SeedOption = None,
    inner_sweeps: SweepsOption = None,
    out_dir: OutDirOption = None,
    from_manifest: ManifestOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Fit a multi-response restricted regression.

    Examples:
        restricted-regression fit-multi chemical
    """
    settings = _setup(log_level)
    with _exit_codes():
        _run_fit(
            "fit-multi",
            fit_multivariate,
            config,
            settings=settings,
            out_dir=out_dir,
            from_manifest=from_manifest,
            overrides={"iters": iters, "burn_in": burn_in, "seed": seed, "inner_sweeps": inner_sweeps},
        )


@app.command()
def replicate(
    study: Annotated[
        str | None,
        typer.Argument(
            help="example1-r1, example1-r2, delta-sweep, example2, rent or chemical"
        ),
    ] = None,
    scale: Annotated[str, typer.Option("--scale", help="desk or paper")] = Scale.DESK.value,
    seed: Annotated[int, typer.Option("--seed", min=0, help="Random seed")] = 0,
    replications: Annotated[
        int | None, typer.Option("--replications", min=1, help="Override the scale default")
    ] = None,
    iters: ItersOption = None,
    burn_in: BurnInOption = None,
    inner_sweeps: SweepsOption = None,
    fixed_design: Annotated[
        bool, typer.Option("--fixed-design", help="Reuse one design across replications")
    ] = False,
    data: Annotated[
        Path | None, typer.Option("--data", help="Dataset for the real-data studies")
    ] = None,
    jobs: Annotated[
        int | None, typer.Option("--jobs", "-j", min=1, help="Parallel replications")
    ] = None,
    out_dir: OutDirOption = None,
    from_manifest: ManifestOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Replicate a simulation study or real-data analysis.

    Writes report.json plus replications.csv (simulations),
    delta_sweep.csv (delta-sweep) or chain and summary files (real data).

    Examples:
        restricted-regression replicate example1-r2 --scale desk --seed 7
        restricted-regression replicate delta-sweep --jobs 4
    """
    settings = _setup(log_level)
    with _exit_codes():
        started = time.perf_counter()
        options: dict[str, Any] = {
            "study": study,
            "scale": scale,
            "seed": seed,
            "replications": replications,
            "iterations": iters,
            "burn_in": burn_in,
            "inner_sweeps": inner_sweeps,
            "fresh_design": not fixed_design,
            "data_path": data,
        }
        if from_manifest is not None:
            recorded = read_manifest(from_manifest).config
            options = {key: recorded.get(key) for key in options}
            options["fresh_design"] = recorded.get("fresh_design", True)
            if options["data_path"] is not None:
                options["data_path"] = Path(options["data_path"])
        if options["study"] is None:
            raise ConfigError("give a study name or --from-manifest")
        chosen = Study.parse(options["study"])
        try:
            chosen_scale = Scale(options["scale"])
        except ValueError as exc:
            raise ConfigError(f"scale must be 'desk' or 'paper', got '{options['scale']}'") from exc

        with create_executor(jobs or settings.jobs) as executor:
            result = run_study(
                chosen,
                chosen_scale,
                options["seed"],
                settings=settings,
                executor=executor,
                replications=options["replications"],
                iterations=options["iterations"],
                burn_in=options["burn_in"],
                inner_sweeps=options["inner_sweeps"],
                fresh_design=options["fresh_design"],
                data_path=options["data_path"],
            )

        target = out_dir or DEFAULT_OUT_DIR / chosen.value
        written = write_study_outputs(result, target)
        recorded_config = {
            **result.config,
            "study": chosen.value,
            "scale": chosen_scale.value,
            "replications": result.report.replications,
        }
        if chosen in {Study.RENT, Study.CHEMICAL}:
            recorded_config.pop("replications")
        data_source = result.config.get("data_path")
        manifest = build_manifest(
            "replicate",
            recorded_config,
            result.report.seed,
            inputs=[Path(data_source)] if data_source else [],
            outputs=written,
            seconds=time.perf_counter() - started,
        )
        written.append(write_manifest(manifest, target / MANIFEST_FILE))
        print_report(result.report)
        print_written(written)


@app.command()
def diagnose(
    chain_csv: Annotated[Path, typer.Argument(help="Chain CSV written by a fit")],
    max_lag: Annotated[
        int, typer.Option("--max-lag", min=0, help="Largest autocorrelation lag")
    ] = DEFAULT_MAX_LAG,
    burn_in: Annotated[int, typer.Option("--burn-in", min=0, help="Rows to skip")] = 0,
    out_dir: OutDirOption = None,
    log_level: LogLevelOption = None,
) -> None:
    """Export per-parameter ACF files and a summary for a chain CSV.

    Examples:
        restricted-regression diagnose runs/rent/chain.csv --max-lag 40
    """
    _setup(log_level)
    with _exit_codes():
        frame = read_chain_csv(chain_csv)
        target = out_dir or chain_csv.parent / f"{chain_csv.stem}_diagnostics"
        written = write_acf_csv(frame, target, max_lag, burn_in)
        summary = summarize_frame(frame, burn_in)
        written.append(write_summary_json(summary, target / "summary.json"))
        print_summary(summary, title=chain_csv.name)
        print_written(written)


@app.command()
def configs() -> None:
    """List the shipped fit configurations."""
    from rich.table import Table

    from restricted_regression.config import CONFIG_DIR

    table = Table(title="Available Configurations", show_header=True)
    table.add_column("Name", style="cyan")
    table.add_column("Path", style="dim")
    for name in ConfigLoader.available():
        table.add_row(name, str(CONFIG_DIR / f"{name}.yaml"))
    err_console.print(table)


@app.command()
def validate(
    config: Annotated[
        str | None,
        typer.Argument(help="Config file or shipped name (validates all shipped if omitted)"),
    ] = None,
) -> None:
    """Validate fit configurations against the JSON schema."""
    from restricted_regression.config import CONFIG_DIR

    with _exit_codes():
        if config is None:
            targets = [(name, CONFIG_DIR / f"{name}.yaml") for name in ConfigLoader.available()]
        elif Path(config).exists():
            targets = [(Path(config).name, Path(config))]
        elif config in ConfigLoader.available():
            targets = [(config, CONFIG_DIR / f"{config}.yaml")]
        else:
            raise ConfigError(f"config file not found: {config}")

        has_errors = False
        for name, path in targets:
            errors = ConfigLoader.validate(ConfigLoader.read(path))
            if errors:
                has_errors = True
                err_console.print(f"[red]✗[/red] {name}")
                for err in errors:
                    err_console.print(f"  [red]•[/red] {escape(err)}")
            else:
                err_console.print(f"[green]✓[/green] {name}")

    if has_errors:
        raise typer.Exit(ConfigError.exit_code)


if __name__ == "__main__":
    app()
