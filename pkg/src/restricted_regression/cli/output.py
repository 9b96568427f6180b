"""Output formatters for CLI display.

Everything here prints to stderr; stdout stays free for progress only.
"""

from pathlib import Path

from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from restricted_regression.cli.console import err_console
from restricted_regression.models import ExperimentReport, Summary


def _fmt(value: float | None, digits: int = 4) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def print_summary(summary: Summary, title: str = "Posterior summary") -> None:
    """Print per-parameter posterior summaries as a table.

    Args:
        summary: Summary of the kept draws.
        title: Table title.
    """
    table = Table(title=title, show_header=True, header_style="info")
    table.add_column("Parameter", style="highlight")
    for column in ("Mean", "SD", "ESS", "ACF(1)", "Split z"):
        table.add_column(column, justify="right")
    for p in summary.parameters:
        table.add_row(
            p.name, _fmt(p.mean), _fmt(p.sd), _fmt(p.ess, 1), _fmt(p.acf1, 3), _fmt(p.split_z, 2)
        )
    err_console.print(table)
    err_console.print(f"[muted]{summary.draws} kept draws[/muted]")


def print_report(report: ExperimentReport) -> None:
    """Print a study report: one table per method, then the sweep if any."""
    for method in report.methods:
        table = Table(
            title=f"{report.study} - [method]{method.method}[/method]",
            show_header=True,
            header_style="info",
        )
        table.add_column("Parameter", style="highlight")
        table.add_column("Truth", justify="right")
        table.add_column("Estimate", justify="right")
        table.add_column("SE", justify="right")
        table.add_column("Posterior SD", justify="right")
        for p in method.parameters:
            table.add_row(p.name, _fmt(p.truth), _fmt(p.estimate), _fmt(p.se), _fmt(p.posterior_sd))
        err_console.print(table)
        facts = [f"replications {method.replications}"]
        if method.failed:
            facts.append(f"[warning]failed {method.failed}[/warning]")
        if method.mse is not None:
            facts.append(f"MSE {method.mse:.4f}")
        if method.sigma_mse is not None:
            facts.append(f"covariance MSE {method.sigma_mse:.4f}")
        if method.seconds_per_iteration is not None:
            facts.append(f"{method.seconds_per_iteration * 1e3:.4f} ms/iteration")
        err_console.print("  ".join(facts))

    if report.delta_sweep:
        table = Table(title="Relative efficiency", show_header=True, header_style="info")
        table.add_column("delta", justify="right")
        table.add_column("RE", justify="right")
        best = max(report.delta_sweep, key=lambda p: p.re)
        for point in report.delta_sweep:
            style = "success" if point is best else None
            table.add_row(f"{point.delta:+.1f}", f"{point.re:.4f}", style=style)
        err_console.print(table)


def print_written(paths: list[Path], title: str = "Outputs") -> None:
    """Print the files a command wrote in a panel."""
    body = "\n".join(escape(str(p)) for p in paths)
    err_console.print(Panel(body, title=f"[success]{title}[/success]", border_style="green"))
