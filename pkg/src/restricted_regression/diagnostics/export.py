"""Chain, summary and autocorrelation files.

* chain CSV: ``iter`` followed by one column per parameter
  (``sigma2, beta_1..beta_p`` or ``sigma_11..sigma_kk, beta_11..beta_pk``);
  floats are written with shortest round-trip repr and read back with the
  round-trip parser, so a reloaded chain summarizes bit-for-bit identically;
* summary JSON: a list of ``{"name", "mean", "sd", "ess", "acf1", "split_z"}``;
* ACF CSV: ``lag,rho``, one file per parameter.
"""

import logging
import re
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import TypeAdapter

from restricted_regression.core.errors import DatasetError, ParseError
from restricted_regression.diagnostics.summary import acf
from restricted_regression.engines import Chain, ChainMV
from restricted_regression.models import ParameterSummary, Summary

logger = logging.getLogger(__name__)

_SUMMARY_ADAPTER = TypeAdapter(list[ParameterSummary])
_UNSAFE = re.compile(r"[^A-Za-z0-9_.-]+")


def write_chain_csv(chain: Chain | ChainMV, path: str | Path) -> Path:
    """Write every draw, burn-in included, with a 1-based ``iter`` column."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    chain.to_frame().to_csv(path, index=False)
    logger.debug("wrote chain", extra={"path": str(path), "draws": len(chain)})
    return path


def read_chain_csv(path: str | Path) -> pd.DataFrame:
    """Read a chain CSV.

    Raises:
        DatasetError: If the file does not exist.
        ParseError: If it is malformed, lacks parameter columns or holds
            non-numeric or empty cells.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"chain file not found: {path}")
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except pd.errors.EmptyDataError as exc:
        raise ParseError(f"{path.name} is empty") from exc
    except pd.errors.ParserError as exc:
        raise ParseError(f"malformed chain file {path.name}: {exc}") from exc

    frame.columns = [str(c).strip() for c in frame.columns]
    if not [c for c in frame.columns if c != "iter"]:
        raise ParseError(f"{path.name} has no parameter columns")
    for column in frame.columns:
        if not pd.api.types.is_numeric_dtype(frame[column]):
            values = pd.to_numeric(frame[column], errors="coerce")
            row = int(np.flatnonzero(values.isna().to_numpy())[0]) + 1
            raise ParseError(
                f"cannot parse {frame[column].iloc[row - 1]!r} as a number", row=row, column=column
            )
        missing = frame[column].isna().to_numpy()
        if missing.any():
            raise ParseError("empty cell", row=int(np.flatnonzero(missing)[0]) + 1, column=column)
    return frame


def write_summary_json(summary: Summary, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(_SUMMARY_ADAPTER.dump_json(summary.parameters, indent=2))
    return path


def read_summary_json(path: str | Path) -> Summary:
    parameters = _SUMMARY_ADAPTER.validate_json(Path(path).read_bytes())
    return Summary(parameters=parameters)


def acf_filename(name: str) -> str:
    return f"acf_{_UNSAFE.sub('_', name)}.csv"


def write_acf_csv(
    frame: pd.DataFrame, out_dir: str | Path, max_lag: int, burn_in: int = 0
) -> list[Path]:
    """Write ``lag,rho`` files for every parameter column of a chain frame.

    Raises:
        InsufficientDataError: If ``max_lag`` is not below the kept length.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    kept = frame.iloc[burn_in:]
    written = []
    for column in (c for c in kept.columns if c != "iter"):
        rho = acf(kept[column].to_numpy(dtype=np.float64), max_lag)
        target = out / acf_filename(column)
        pd.DataFrame({"lag": np.arange(max_lag + 1), "rho": rho}).to_csv(target, index=False)
        written.append(target)
    return written
