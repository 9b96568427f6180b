"""Dataset loaders and shipped data."""

from restricted_regression.datasets.loaders import (
    DATA_DIR,
    Dataset,
    load_dataset,
    read_numeric_csv,
    shipped_dataset,
)

__all__ = [
    "DATA_DIR",
    "Dataset",
    "load_dataset",
    "read_numeric_csv",
    "shipped_dataset",
]
