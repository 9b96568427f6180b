"""Estimator accuracy metrics."""

import math

import numpy as np
from numpy.typing import ArrayLike

from restricted_regression.core.errors import NonPositiveMseError, ShapeMismatchError


def mse(estimates: ArrayLike, truth: ArrayLike) -> float:
    """Mean over replications of the summed squared estimation error.

    Args:
        estimates: One estimate per replication, shape (m, *truth.shape).
        truth: True parameter vector or matrix.

    Returns:
        (1/m) sum_k ||estimate_k - truth||^2 (Frobenius for matrices).

    Raises:
        ShapeMismatchError: If shapes disagree or there are no replications.
    """
    est = np.asarray(estimates, dtype=np.float64)
    true = np.asarray(truth, dtype=np.float64)
    if est.ndim != true.ndim + 1 or est.shape[1:] != true.shape:
        raise ShapeMismatchError(
            f"estimates of shape {est.shape} do not stack estimates of shape {true.shape}"
        )
    if est.shape[0] == 0:
        raise ShapeMismatchError("mse needs at least one replication")
    squared = ((est - true) ** 2).reshape(est.shape[0], -1).sum(axis=1)
    return math.fsum(squared) / est.shape[0]


def relative_efficiency(mse_unrestricted: float, mse_restricted: float) -> float:
    """MSE(unrestricted) / MSE(restricted); above 1 the restrictions helped.

    Raises:
        NonPositiveMseError: If either MSE is not strictly positive.
    """
    if not (mse_unrestricted > 0.0 and mse_restricted > 0.0):
        raise NonPositiveMseError(
            f"relative efficiency needs positive MSEs, got {mse_unrestricted} and {mse_restricted}"
        )
    return mse_unrestricted / mse_restricted
