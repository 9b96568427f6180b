"""Samplers for the conjugate building blocks.

Inverse gamma, multivariate normal, inverse Wishart (Bartlett construction on
the inverse scale) and matrix normal.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import solve_triangular

from restricted_regression.core.errors import (
    DimensionMismatchError,
    InvalidDegreesOfFreedomError,
    InvalidParameterError,
)
from restricted_regression.distributions.rng import RngStream
from restricted_regression.numerics import (
    SpdFactor,
    as_matrix,
    cholesky,
    spd_inverse,
)


def sample_inverse_gamma(shape: float, rate: float, rng: RngStream) -> float:
    """Draw from IG(shape, rate), density proportional to x^(-shape-1) e^(-rate/x).

    Raises:
        InvalidParameterError: If shape or rate is not a positive finite number.
    """
    if not (math.isfinite(shape) and shape > 0.0):
        raise InvalidParameterError(f"inverse gamma shape must be > 0, got {shape}")
    if not (math.isfinite(rate) and rate > 0.0):
        raise InvalidParameterError(f"inverse gamma rate must be > 0, got {rate}")
    return rate / rng.generator.standard_gamma(shape)


def sample_mvn(
    mean: ArrayLike, cov_factor: SpdFactor, rng: RngStream, *, scale: float = 1.0
) -> NDArray[np.float64]:
    """Draw mean + sqrt(scale) * L z with z standard normal.

    Raises:
        DimensionMismatchError: If ``mean`` and the factor disagree in size.
    """
    mu = np.asarray(mean, dtype=np.float64).ravel()
    if mu.size != cov_factor.dim:
        raise DimensionMismatchError(
            f"mean has {mu.size} entries, covariance factor is {cov_factor.dim}x{cov_factor.dim}"
        )
    if mu.size == 0:
        return mu.copy()
    z = rng.generator.standard_normal(mu.size)
    return mu + math.sqrt(scale) * (cov_factor.lower @ z)


class InverseWishart:
    """IW_k(df, scale) with E[Sigma] = scale / (df - k - 1).

    Sigma^{-1} ~ Wishart(df, scale^{-1}) is drawn by the Bartlett
    decomposition and inverted through its triangular factor. The factor of
    scale^{-1} is computed once, so repeated draws only cost O(k^3)
    triangular work.

    Attributes:
        df: Degrees of freedom, must exceed k - 1.
        dim: k.
    """

    def __init__(self, df: float, scale: ArrayLike) -> None:
        scale_m = as_matrix(scale)
        dim = scale_m.shape[0]
        if not (math.isfinite(df) and df > dim - 1):
            raise InvalidDegreesOfFreedomError(
                f"inverse Wishart needs df > {dim - 1}, got {df}"
            )
        self.df = float(df)
        self.dim = dim
        self._inv_scale_lower = cholesky(spd_inverse(cholesky(scale_m))).lower
        self._chi_dfs = self.df - np.arange(dim)

    def draw(self, rng: RngStream) -> NDArray[np.float64]:
        gen = rng.generator
        bartlett = np.zeros((self.dim, self.dim))
        bartlett[np.diag_indices(self.dim)] = np.sqrt(gen.chisquare(self._chi_dfs))
        rows, cols = np.tril_indices(self.dim, -1)
        bartlett[rows, cols] = gen.standard_normal(rows.size)
        # Sigma^{-1} = M M' with M lower, so Sigma = M^{-T} M^{-1}
        m = self._inv_scale_lower @ bartlett
        m_inv = solve_triangular(m, np.eye(self.dim), lower=True, check_finite=False)
        sigma = m_inv.T @ m_inv
        return 0.5 * (sigma + sigma.T)


def sample_inverse_wishart(
    df: float, scale: ArrayLike, rng: RngStream
) -> NDArray[np.float64]:
    """One draw from IW_k(df, scale).

    Raises:
        InvalidDegreesOfFreedomError: If df <= k - 1.
        NotPositiveDefiniteError: If ``scale`` is not SPD.
    """
    return InverseWishart(df, scale).draw(rng)


def sample_matrix_normal_factored(
    M: ArrayLike, sigma_factor: SpdFactor, d_factor: SpdFactor, rng: RngStream
) -> NDArray[np.float64]:
    """Matrix normal draw M + L_D Z L_Sigma' from precomputed factors."""
    mean = as_matrix(M)
    rows, cols = mean.shape
    if d_factor.dim != rows or sigma_factor.dim != cols:
        raise DimensionMismatchError(
            f"mean is {rows}x{cols}, row factor is {d_factor.dim}, "
            f"column factor is {sigma_factor.dim}"
        )
    if mean.size == 0:
        return mean.copy()
    z = rng.generator.standard_normal((rows, cols))
    return mean + d_factor.lower @ z @ sigma_factor.lower.T


def sample_matrix_normal(
    M: ArrayLike, Sigma: ArrayLike, D: ArrayLike, rng: RngStream
) -> NDArray[np.float64]:
    """Draw B with vec(B) ~ N(vec(M), Sigma kron D), vec column-major.

    Args:
        M: p x k mean.
        Sigma: k x k column covariance.
        D: p x p row covariance.
        rng: Random stream.

    Raises:
        NotPositiveDefiniteError: If Sigma or D is not SPD.
    """
    return sample_matrix_normal_factored(M, cholesky(Sigma), cholesky(D), rng)
