"""Tests for estimator accuracy metrics."""

import numpy as np
import pytest

from restricted_regression.core.errors import NonPositiveMseError, ShapeMismatchError
from restricted_regression.experiments import mse, relative_efficiency

pytestmark = pytest.mark.unit


def test_mse_single_replication():
    assert mse([[1.1, 1.8]], [1.0, 2.0]) == pytest.approx(0.05)


def test_mse_averages_over_replications():
    truth = np.zeros(2)
    estimates = np.array([[1.0, 0.0], [0.0, 3.0]])
    assert mse(estimates, truth) == pytest.approx(5.0)


def test_mse_of_matrices_uses_frobenius_norm():
    truth = np.eye(2)
    estimates = np.stack([truth + 1.0, truth])
    assert mse(estimates, truth) == pytest.approx(2.0)


def test_mse_is_zero_at_truth():
    assert mse([[0.5, -1.0]], [0.5, -1.0]) == 0.0


def test_mse_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        mse([[1.0, 2.0, 3.0]], [1.0, 2.0])


def test_mse_needs_replications():
    with pytest.raises(ShapeMismatchError):
        mse(np.empty((0, 2)), [1.0, 2.0])


def test_relative_efficiency():
    assert relative_efficiency(0.2, 0.1) == pytest.approx(2.0)
    assert relative_efficiency(0.1, 0.2) == pytest.approx(0.5)


@pytest.mark.parametrize(("unrestricted", "restricted"), [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0)])
def test_relative_efficiency_rejects_non_positive(unrestricted, restricted):
    with pytest.raises(NonPositiveMseError):
        relative_efficiency(unrestricted, restricted)
