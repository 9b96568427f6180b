"""Shared fixtures for the test suite."""

from pathlib import Path

import numpy as np
import pytest

from restricted_regression.config import SamplerSettings
from restricted_regression.datasets import Dataset, shipped_dataset
from restricted_regression.distributions import RngStream
from restricted_regression.experiments import catalog
from restricted_regression.experiments.simulation import simulate_univariate


@pytest.fixture
def rng() -> RngStream:
    return RngStream(12345)


@pytest.fixture
def example1_data() -> Dataset:
    """One simulated dataset of the single-response study."""
    return simulate_univariate(
        catalog.EXAMPLE1_BETA, catalog.EXAMPLE1_SIGMA2, catalog.EXAMPLE1_N, RngStream(7)
    )


@pytest.fixture
def chemical_path() -> Path:
    return shipped_dataset("chemical")


@pytest.fixture
def rent_path() -> Path:
    path = SamplerSettings().rent_path()
    if not path.exists():
        pytest.skip("rent data is not shipped; set RESTREG_RENT_DATA to run")
    return path


@pytest.fixture
def write_csv(tmp_path: Path):
    """Write text to a CSV file under tmp_path and return its path."""

    def _write(text: str, name: str = "data.csv") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def make_spd():
    """Factory for well-conditioned random SPD matrices."""

    def _make(dim: int, seed: int = 0) -> np.ndarray:
        a = np.random.default_rng(seed).standard_normal((dim, dim))
        return a @ a.T + dim * np.eye(dim)

    return _make
