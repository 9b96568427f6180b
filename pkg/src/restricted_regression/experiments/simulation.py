"""Synthetic data for the simulation studies.

Designs are [1, Z] with Z standard normal. With ``design`` given the same
covariates are reused and only the errors are redrawn.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from restricted_regression.core.errors import InvalidParameterError, ShapeMismatchError
from restricted_regression.datasets import Dataset
from restricted_regression.distributions import RngStream
from restricted_regression.numerics import as_matrix, cholesky


def standard_design(n: int, p: int, rng: RngStream) -> NDArray[np.float64]:
    """n x p design with an intercept column and p - 1 standard normal columns."""
    if n < 1 or p < 1:
        raise InvalidParameterError(f"design needs n >= 1 and p >= 1, got n={n}, p={p}")
    return np.column_stack([np.ones(n), rng.generator.standard_normal((n, p - 1))])


def _design(n: int, p: int, rng: RngStream, design: ArrayLike | None) -> NDArray[np.float64]:
    if design is None:
        return standard_design(n, p, rng)
    X = as_matrix(design)
    if X.shape != (n, p):
        raise ShapeMismatchError(f"design has shape {X.shape}, expected ({n}, {p})")
    return X


def simulate_univariate(
    beta: ArrayLike,
    sigma2: float,
    n: int,
    rng: RngStream,
    *,
    design: ArrayLike | None = None,
) -> Dataset:
    """y = X beta + e with e ~ N(0, sigma2 I)."""
    coef = np.asarray(beta, dtype=np.float64).ravel()
    if not sigma2 > 0.0:
        raise InvalidParameterError(f"error variance must be > 0, got {sigma2}")
    X = _design(n, coef.size, rng, design)
    y = X @ coef + np.sqrt(sigma2) * rng.generator.standard_normal(n)
    return Dataset(X=X, Y=y, provenance="simulated")


def simulate_multivariate(
    B: ArrayLike,
    Sigma: ArrayLike,
    n: int,
    rng: RngStream,
    *,
    design: ArrayLike | None = None,
) -> Dataset:
    """Y = X B + E with rows of E ~ N_k(0, Sigma)."""
    coef = as_matrix(B)
    factor = cholesky(Sigma)
    if factor.dim != coef.shape[1]:
        raise ShapeMismatchError(f"Sigma is {factor.dim}x{factor.dim}, B has {coef.shape[1]} columns")
    X = _design(n, coef.shape[0], rng, design)
    E = rng.generator.standard_normal((n, coef.shape[1])) @ factor.lower.T
    return Dataset(X=X, Y=X @ coef + E, provenance="simulated")
