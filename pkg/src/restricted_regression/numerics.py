"""Dense linear algebra kernel.

Cholesky factorization with an explicit definiteness tolerance, SPD solves,
Kronecker products and column-major vectorization. Posterior precisions are
never inverted explicitly by callers; they factor once and solve.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, cho_solve, cholesky as _scipy_cholesky

from restricted_regression.core.errors import (
    DimensionMismatchError,
    NotPositiveDefiniteError,
)

SYMMETRY_TOL = 1e-10
DEFINITENESS_TOL = 1e-12

FloatArray = NDArray[np.float64]


@dataclass(frozen=True)
class SpdFactor:
    """Lower-triangular Cholesky factor of a symmetric positive definite matrix.

    Attributes:
        lower: L with L @ L.T equal to the factored matrix.
    """

    lower: FloatArray

    @property
    def dim(self) -> int:
        return int(self.lower.shape[0])

    def reconstruct(self) -> FloatArray:
        """Return L @ L.T."""
        return self.lower @ self.lower.T

    def scaled(self, factor: float) -> "SpdFactor":
        """Factor of ``factor * m`` for a positive scalar."""
        return SpdFactor(lower=self.lower * np.sqrt(factor))


def as_matrix(m: ArrayLike) -> FloatArray:
    """Convert to a 2-d float array, rejecting other ranks."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2:  # noqa: PLR2004
        raise DimensionMismatchError(f"expected a matrix, got shape {arr.shape}")
    return arr


def symmetrize(m: ArrayLike) -> FloatArray:
    arr = as_matrix(m)
    return 0.5 * (arr + arr.T)


def cholesky(m: ArrayLike) -> SpdFactor:
    """Factor a symmetric positive definite matrix.

    The input is checked for symmetry (relative 1e-10), symmetrized, and
    factored with LAPACK. A pivot L[i, i]**2 at or below 1e-12 times the
    largest diagonal entry is treated as a loss of definiteness.

    Args:
        m: Square symmetric matrix.

    Returns:
        The lower Cholesky factor.

    Raises:
        DimensionMismatchError: If ``m`` is not square.
        NotPositiveDefiniteError: If ``m`` is asymmetric, non-finite or not
            positive definite.
    """
    arr = as_matrix(m)
    rows, cols = arr.shape
    if rows != cols:
        raise DimensionMismatchError(f"cholesky needs a square matrix, got {arr.shape}")
    if rows == 0:
        return SpdFactor(lower=np.zeros((0, 0)))
    if not np.all(np.isfinite(arr)):
        raise NotPositiveDefiniteError("matrix has non-finite entries")

    scale = max(1.0, float(np.max(np.abs(arr))))
    if np.max(np.abs(arr - arr.T)) > SYMMETRY_TOL * scale:
        raise NotPositiveDefiniteError("matrix is not symmetric")
    sym = 0.5 * (arr + arr.T)

    diag_max = float(np.max(np.diag(sym)))
    if diag_max <= 0.0:
        raise NotPositiveDefiniteError("matrix has no positive diagonal entry")
    tol = DEFINITENESS_TOL * diag_max

    try:
        lower = _scipy_cholesky(sym, lower=True, check_finite=False)
    except LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "matrix is not positive definite (degenerate prior or collinear design?)"
        ) from exc

    pivots = np.diag(lower) ** 2
    if np.any(pivots <= tol):
        raise NotPositiveDefiniteError(
            f"Cholesky pivot {float(np.min(pivots)):.3e} below tolerance {tol:.3e}"
        )
    return SpdFactor(lower=lower)


def solve_spd(f: SpdFactor, b: ArrayLike) -> FloatArray:
    """Solve m x = b given the Cholesky factor of m.

    Raises:
        DimensionMismatchError: If the leading dimension of ``b`` differs
            from the factor's dimension.
    """
    rhs = np.asarray(b, dtype=np.float64)
    if rhs.ndim == 0 or rhs.shape[0] != f.dim:
        raise DimensionMismatchError(
            f"right-hand side of shape {rhs.shape} does not conform to a "
            f"{f.dim}x{f.dim} factor"
        )
    if f.dim == 0:
        return rhs.copy()
    return cho_solve((f.lower, True), rhs, check_finite=False)


def spd_inverse(f: SpdFactor) -> FloatArray:
    """Symmetric inverse of the factored matrix."""
    return symmetrize(solve_spd(f, np.eye(f.dim))) if f.dim else np.zeros((0, 0))


def kron(a: ArrayLike, b: ArrayLike) -> FloatArray:
    """Kronecker product; block (i, j) equals a[i, j] * b."""
    return np.kron(as_matrix(a), as_matrix(b))


def vec(m: ArrayLike) -> FloatArray:
    """Stack the columns of ``m`` into one vector."""
    return as_matrix(m).reshape(-1, order="F")


def unvec(v: ArrayLike, rows: int, cols: int) -> FloatArray:
    """Inverse of :func:`vec`.

    Raises:
        DimensionMismatchError: If ``len(v) != rows * cols``.
    """
    arr = np.asarray(v, dtype=np.float64).ravel()
    if arr.size != rows * cols:
        raise DimensionMismatchError(
            f"cannot unvec {arr.size} entries into a {rows}x{cols} matrix"
        )
    return arr.reshape((rows, cols), order="F")


def ols(X: ArrayLike, Y: ArrayLike) -> FloatArray:
    """Least-squares coefficients (X'X)^{-1} X'Y via a Cholesky solve.

    Works for a response vector or a response matrix.
    """
    design = as_matrix(X)
    response = np.asarray(Y, dtype=np.float64)
    if response.shape[0] != design.shape[0]:
        raise DimensionMismatchError(
            f"design has {design.shape[0]} rows, response has {response.shape[0]}"
        )
    return solve_spd(cholesky(design.T @ design), design.T @ response)


def residual_cross_product(X: ArrayLike, Y: ArrayLike) -> FloatArray:
    """(Y - X B_ols)'(Y - X B_ols) for a response matrix."""
    design = as_matrix(X)
    response = as_matrix(Y)
    resid = response - design @ ols(design, response)
    return symmetrize(resid.T @ resid)
