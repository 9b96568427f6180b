"""Truncated normal samplers.

The univariate kernel uses the inverse CDF in the bulk and Robert's
exponential (or uniform) rejection once the interval lies more than
``TAIL_CUTOFF`` standard deviations from the mean. The multivariate sampler
is the component-wise Gibbs sampler of a normal truncated to a box; a normal
truncated to {x : lower <= A x <= upper} is handled by running that sampler
on theta = A x.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import lu_factor, lu_solve
from scipy.special import ndtr, ndtri

from restricted_regression.core.errors import (
    DimensionMismatchError,
    EmptyIntervalError,
    InfeasibleStartError,
    InvalidParameterError,
    SingularTransformError,
)
from restricted_regression.distributions.bounds import BoxBounds
from restricted_regression.distributions.rng import RngStream
from restricted_regression.numerics import (
    as_matrix,
    cholesky,
    spd_inverse,
    symmetrize,
)

TAIL_CUTOFF = 5.0
DEFAULT_INNER_SWEEPS = 5


# ---------------------------------------------------------------------------
# Univariate kernel
# ---------------------------------------------------------------------------


def _upper_tail(a: float, b: float, gen: np.random.Generator) -> float:
    """Standard normal restricted to (a, b) with a > TAIL_CUTOFF."""
    if math.isfinite(b) and (b - a) * (a + b) <= 2.0:  # noqa: PLR2004
        # narrow interval: uniform proposal, acceptance >= exp(-1)
        while True:
            z = a + (b - a) * gen.random()
            if gen.random() <= math.exp(0.5 * (a * a - z * z)):
                return z
    alpha = 0.5 * (a + math.sqrt(a * a + 4.0))
    while True:
        z = a + gen.exponential(1.0 / alpha)
        if z < b and gen.random() <= math.exp(-0.5 * (z - alpha) ** 2):
            return z


def _inverse_cdf(a: float, b: float, gen: np.random.Generator) -> float:
    """Standard normal restricted to (a, b) by inversion."""
    if a > 0.0:
        # upper-tail probabilities keep precision right of the mean
        pa, pb = float(ndtr(-a)), float(ndtr(-b))
        while True:
            z = -float(ndtri(pb + gen.random() * (pa - pb)))
            if math.isfinite(z):
                return min(max(z, a), b)
    pa, pb = float(ndtr(a)), float(ndtr(b))
    while True:
        z = float(ndtri(pa + gen.random() * (pb - pa)))
        if math.isfinite(z):
            return min(max(z, a), b)


def _standard_truncnorm(a: float, b: float, gen: np.random.Generator) -> float:
    if a > TAIL_CUTOFF:
        return _upper_tail(a, b, gen)
    if b < -TAIL_CUTOFF:
        return -_upper_tail(-b, -a, gen)
    return _inverse_cdf(a, b, gen)


def _draw_truncnorm(
    mu: float, sigma: float, lo: float, hi: float, gen: np.random.Generator
) -> float:
    if lo == -math.inf and hi == math.inf:
        return mu + sigma * gen.standard_normal()
    x = mu + sigma * _standard_truncnorm((lo - mu) / sigma, (hi - mu) / sigma, gen)
    # rounding in the affine map can land on a face
    if x <= lo:
        x = math.nextafter(lo, math.inf)
    if x >= hi:
        x = math.nextafter(hi, -math.inf)
    return x


def sample_truncnorm(
    mu: float, sigma: float, lo: float, hi: float, rng: RngStream
) -> float:
    """Draw from N(mu, sigma^2) conditioned on (lo, hi).

    Args:
        mu: Mean of the untruncated normal.
        sigma: Standard deviation, > 0.
        lo: Lower bound, may be -inf.
        hi: Upper bound, may be +inf.
        rng: Random stream.

    Returns:
        A draw strictly inside (lo, hi).

    Raises:
        EmptyIntervalError: If ``lo >= hi``.
        InvalidParameterError: If ``sigma`` is not positive.
    """
    if not (math.isfinite(sigma) and sigma > 0.0):
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    if not lo < hi:
        raise EmptyIntervalError(f"empty interval ({lo}, {hi})")
    return _draw_truncnorm(float(mu), float(sigma), float(lo), float(hi), rng.generator)


# ---------------------------------------------------------------------------
# Box-truncated multivariate normal
# ---------------------------------------------------------------------------


def gibbs_box_sweeps(
    init: ArrayLike,
    mean: ArrayLike,
    precision: ArrayLike,
    bounds: BoxBounds,
    sweeps: int,
    rng: RngStream,
) -> NDArray[np.float64]:
    """Component-wise Gibbs sweeps for N(mean, precision^{-1}) on a box.

    Coordinate j is redrawn from its exact conditional
    N(mean_j - sum_{i != j} P_ji (x_i - mean_i) / P_jj, 1 / P_jj) truncated to
    (lower_j, upper_j). ``init`` must lie in the box; callers that have
    already checked this use this entry point directly.
    """
    x = np.array(init, dtype=np.float64).ravel()
    mu = np.asarray(mean, dtype=np.float64).ravel()
    prec = np.asarray(precision, dtype=np.float64)
    diag = np.diag(prec).copy()
    cond_sd = 1.0 / np.sqrt(diag)
    resid = x - mu
    lower = bounds.lower
    upper = bounds.upper
    gen = rng.generator
    for _ in range(sweeps):
        for j in range(x.size):
            shift = (float(prec[j] @ resid) - diag[j] * resid[j]) / diag[j]
            new = _draw_truncnorm(
                mu[j] - shift, float(cond_sd[j]), float(lower[j]), float(upper[j]), gen
            )
            x[j] = new
            resid[j] = new - mu[j]
    return x


def _check_sweeps(sweeps: int) -> None:
    if sweeps < 1:
        raise InvalidParameterError(f"inner sweeps must be >= 1, got {sweeps}")


def sample_tmvn_box(
    mean: ArrayLike,
    cov: ArrayLike,
    bounds: BoxBounds,
    init: ArrayLike,
    sweeps: int,
    rng: RngStream,
) -> NDArray[np.float64]:
    """One draw of N(mean, cov) truncated to ``bounds`` after ``sweeps`` sweeps.

    Raises:
        DimensionMismatchError: If mean, cov, bounds and init disagree.
        InfeasibleStartError: If ``init`` is outside the box.
        NotPositiveDefiniteError: If ``cov`` is not SPD.
    """
    _check_sweeps(sweeps)
    mu = np.asarray(mean, dtype=np.float64).ravel()
    start = np.asarray(init, dtype=np.float64).ravel()
    cov_m = as_matrix(cov)
    if not (cov_m.shape == (mu.size, mu.size) and start.size == mu.size == bounds.dim):
        raise DimensionMismatchError(
            f"mean {mu.size}, cov {cov_m.shape}, init {start.size}, box {bounds.dim}"
        )
    if not bounds.contains(start):
        raise InfeasibleStartError("initial point lies outside the truncation box")
    precision = spd_inverse(cholesky(cov_m))
    return gibbs_box_sweeps(start, mu, precision, bounds, sweeps, rng)


class LinearTransform:
    """Invertible square map A with a cached LU factorization.

    Attributes:
        matrix: A.
    """

    def __init__(self, matrix: ArrayLike) -> None:
        a = as_matrix(matrix)
        n_rows, n_cols = a.shape
        if n_rows != n_cols:
            raise SingularTransformError(f"transform must be square, got {a.shape}")
        if n_rows == 0 or np.linalg.matrix_rank(a) < n_rows:
            raise SingularTransformError("transform matrix is singular")
        self.matrix = a
        self._lu = lu_factor(a, check_finite=False)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def apply(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.matrix @ np.asarray(x, dtype=np.float64)

    def solve(self, theta: ArrayLike) -> NDArray[np.float64]:
        """Return A^{-1} theta."""
        return lu_solve(self._lu, np.asarray(theta, dtype=np.float64), check_finite=False)

    def pullback_precision(self, precision: ArrayLike) -> NDArray[np.float64]:
        """Precision of theta = A x given the precision P of x: A^{-T} P A^{-1}."""
        left = lu_solve(self._lu, as_matrix(precision), trans=1, check_finite=False)
        return symmetrize(lu_solve(self._lu, left.T, trans=1, check_finite=False))


def sample_mvn_under_linear_box(
    mean: ArrayLike,
    cov: ArrayLike,
    A: ArrayLike,
    bounds: BoxBounds,
    init: ArrayLike,
    sweeps: int,
    rng: RngStream,
) -> NDArray[np.float64]:
    """Draw x ~ N(mean, cov) restricted to {x : lower <= A x <= upper}.

    theta = A x ~ N(A mean, A cov A') is sampled on the box and mapped back.

    Raises:
        SingularTransformError: If A is not invertible.
        InfeasibleStartError: If A @ init is outside the box.
    """
    _check_sweeps(sweeps)
    transform = LinearTransform(A)
    mu = np.asarray(mean, dtype=np.float64).ravel()
    cov_m = as_matrix(cov)
    if not (cov_m.shape == (transform.dim, transform.dim) and mu.size == bounds.dim == transform.dim):
        raise DimensionMismatchError(
            f"mean {mu.size}, cov {cov_m.shape}, transform {transform.dim}, box {bounds.dim}"
        )
    theta_init = transform.apply(np.asarray(init, dtype=np.float64).ravel())
    if not bounds.contains(theta_init):
        raise InfeasibleStartError("A @ init lies outside the truncation box")
    precision = transform.pullback_precision(spd_inverse(cholesky(cov_m)))
    theta = gibbs_box_sweeps(
        theta_init, transform.apply(mu), precision, bounds, sweeps, rng
    )
    return transform.solve(theta)
