"""Chain summaries, convergence diagnostics and file export."""

from restricted_regression.diagnostics.export import (
    acf_filename,
    read_chain_csv,
    read_summary_json,
    write_acf_csv,
    write_chain_csv,
    write_summary_json,
)
from restricted_regression.diagnostics.summary import (
    acf,
    ess,
    mean_sd,
    split_mean_z,
    summarize,
    summarize_frame,
    summarize_series,
)

__all__ = [
    "acf",
    "acf_filename",
    "ess",
    "mean_sd",
    "read_chain_csv",
    "read_summary_json",
    "split_mean_z",
    "summarize",
    "summarize_frame",
    "summarize_series",
    "write_acf_csv",
    "write_chain_csv",
    "write_summary_json",
]
