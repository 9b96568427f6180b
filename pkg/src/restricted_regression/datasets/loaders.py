"""Dataset loading.

Three formats are understood:

* ``rent``: rent paid per person against rooms per person and distance,
  split by a 0/1 sex indicator s. Regressors are
  [1, s*r, (1-s)*r, s*d, (1-s)*d]. Either raw columns
  ``rent, occupants, rooms, distance, sex`` or per-person columns
  ``rent_per_person, rooms_per_person, distance, sex`` are accepted.
* ``chemical``: responses ``y1, y2, y3`` and predictors ``x1, x2, x3``
  with an intercept, X = [1, x1, x2, x3].
* ``generic``: any CSV, with response and predictor column names given by
  the caller.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
import pandas as pd

from restricted_regression.core.errors import (
    DatasetError,
    MissingValueError,
    ParseError,
)

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent / "data"

RENT_RAW_COLUMNS = ("rent", "occupants", "rooms", "distance", "sex")
RENT_PER_PERSON_COLUMNS = ("rent_per_person", "rooms_per_person", "distance", "sex")
CHEMICAL_RESPONSES = ("y1", "y2", "y3")
CHEMICAL_PREDICTORS = ("x1", "x2", "x3")

_LINE_RE = re.compile(r"line (\d+)")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Design matrix and response(s) ready for a sampler.

    Attributes:
        X: n x p design, intercept column included where applicable.
        Y: Response vector (n,) or matrix (n, k).
        x_labels: Names of the design columns.
        y_labels: Names of the responses.
        provenance: Free-text source note.
    """

    X: NDArray[np.float64]
    Y: NDArray[np.float64]
    x_labels: tuple[str, ...] = ()
    y_labels: tuple[str, ...] = ()
    provenance: str = ""
    source: Path | None = field(default=None)

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=np.float64)
        Y = np.asarray(self.Y, dtype=np.float64)
        if X.ndim != 2 or Y.ndim not in {1, 2}:  # noqa: PLR2004
            raise DatasetError(f"bad dataset shapes X {X.shape}, Y {Y.shape}")
        if X.shape[0] != Y.shape[0]:
            raise DatasetError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]}")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise MissingValueError("dataset contains non-finite values")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    @property
    def p(self) -> int:
        return int(self.X.shape[1])

    @property
    def k(self) -> int:
        return 1 if self.Y.ndim == 1 else int(self.Y.shape[1])


def read_numeric_csv(path: str | Path) -> pd.DataFrame:
    """Read a CSV whose every cell must be numeric.

    Raises:
        DatasetError: If the file does not exist.
        ParseError: On malformed rows or non-numeric cells, naming the row
            (1-based data row) and column.
        MissingValueError: On empty cells.
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"data file not found: {path}")
    try:
        raw = pd.read_csv(path, dtype=str, skipinitialspace=True, keep_default_na=False)
    except pd.errors.ParserError as exc:
        match = _LINE_RE.search(str(exc))
        row = int(match.group(1)) - 1 if match else None
        raise ParseError(f"malformed CSV in {path.name}: {exc}", row=row) from exc
    except pd.errors.EmptyDataError as exc:
        raise ParseError(f"{path.name} is empty") from exc

    raw.columns = [str(c).strip() for c in raw.columns]
    frame = pd.DataFrame(index=raw.index)
    for column in raw.columns:
        text = raw[column].str.strip()
        empty = text.isna() | (text == "")
        if empty.any():
            row = int(np.flatnonzero(empty.to_numpy())[0]) + 1
            raise MissingValueError("empty cell", row=row, column=column)
        values = pd.to_numeric(text, errors="coerce")
        bad = values.isna().to_numpy()
        if bad.any():
            row = int(np.flatnonzero(bad)[0]) + 1
            raise ParseError(
                f"cannot parse {text.iloc[row - 1]!r} as a number", row=row, column=column
            )
        frame[column] = values.astype(np.float64)
    return frame


def _require(frame: pd.DataFrame, columns: tuple[str, ...], path: Path) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ParseError(f"{path.name} lacks columns {missing}")


def _load_rent(frame: pd.DataFrame, path: Path) -> Dataset:
    if all(c in frame.columns for c in RENT_PER_PERSON_COLUMNS):
        y = frame["rent_per_person"].to_numpy()
        r = frame["rooms_per_person"].to_numpy()
    else:
        _require(frame, RENT_RAW_COLUMNS, path)
        occupants = frame["occupants"].to_numpy()
        if np.any(occupants <= 0):
            row = int(np.flatnonzero(occupants <= 0)[0]) + 1
            raise ParseError("occupants must be positive", row=row, column="occupants")
        y = frame["rent"].to_numpy() / occupants
        r = frame["rooms"].to_numpy() / occupants
    s = frame["sex"].to_numpy()
    off = ~np.isin(s, (0.0, 1.0))
    if off.any():
        raise ParseError("sex must be 0 or 1", row=int(np.flatnonzero(off)[0]) + 1, column="sex")
    d = frame["distance"].to_numpy()
    X = np.column_stack([np.ones_like(y), s * r, (1 - s) * r, s * d, (1 - s) * d])
    return Dataset(
        X=X,
        Y=y,
        x_labels=("intercept", "s*rooms", "(1-s)*rooms", "s*distance", "(1-s)*distance"),
        y_labels=("rent_per_person",),
        provenance="student rent data (32 observations), rent and rooms per person",
        source=path,
    )


def _load_chemical(frame: pd.DataFrame, path: Path) -> Dataset:
    _require(frame, CHEMICAL_RESPONSES + CHEMICAL_PREDICTORS, path)
    predictors = frame[list(CHEMICAL_PREDICTORS)].to_numpy()
    return Dataset(
        X=np.column_stack([np.ones(len(frame)), predictors]),
        Y=frame[list(CHEMICAL_RESPONSES)].to_numpy(),
        x_labels=("intercept", "temperature", "concentration", "time"),
        y_labels=CHEMICAL_RESPONSES,
        provenance="chemical reaction data: y1 unchanged material, y2 converted, y3 unwanted by-product",
        source=path,
    )


def _load_generic(
    frame: pd.DataFrame,
    path: Path,
    response: list[str],
    predictors: list[str],
    *,
    intercept: bool,
) -> Dataset:
    if not response or not predictors:
        raise DatasetError("generic datasets need response and predictor column names")
    _require(frame, tuple(response) + tuple(predictors), path)
    X = frame[predictors].to_numpy()
    labels = tuple(predictors)
    if intercept:
        X = np.column_stack([np.ones(len(frame)), X])
        labels = ("intercept", *labels)
    Y = frame[response[0]].to_numpy() if len(response) == 1 else frame[response].to_numpy()
    return Dataset(X=X, Y=Y, x_labels=labels, y_labels=tuple(response), source=path)


def load_dataset(
    path: str | Path,
    format: str = "generic",
    *,
    response: list[str] | None = None,
    predictors: list[str] | None = None,
    intercept: bool = True,
) -> Dataset:
    """Load and validate a dataset.

    Args:
        path: CSV file with a header row.
        format: ``rent``, ``chemical`` or ``generic``.
        response: Response column(s) for ``generic``.
        predictors: Predictor columns for ``generic``.
        intercept: Prepend an intercept column for ``generic``.

    Returns:
        The validated dataset.

    Raises:
        DatasetError: Missing file or unknown format.
        ParseError: Malformed row or non-numeric cell (row and column named).
        MissingValueError: Empty cell.
    """
    path = Path(path)
    frame = read_numeric_csv(path)
    if format == "rent":
        dataset = _load_rent(frame, path)
    elif format == "chemical":
        dataset = _load_chemical(frame, path)
    elif format == "generic":
        dataset = _load_generic(
            frame, path, response or [], predictors or [], intercept=intercept
        )
    else:
        raise DatasetError(f"unknown dataset format '{format}'")
    logger.debug("loaded dataset", extra={"path": str(path), "n": dataset.n, "p": dataset.p})
    return dataset


def shipped_dataset(name: str) -> Path:
    """Path of a dataset shipped with the package (``chemical``, ``rent``)."""
    return DATA_DIR / f"{name}.csv"
