"""Conjugate priors and closed-form posteriors.

The partitioned priors put independent conjugate blocks on the restricted
coefficients (S) and the free ones (S'):

* univariate: sigma^2 ~ IG(a/2, b/2), beta_S' | sigma^2 ~ N(mu_S', sigma^2 C_S'),
  beta_S | sigma^2 ~ N(mu_S, sigma^2 C_S);
* multivariate: Sigma ~ IW_k(r, Q), B_S' | Sigma ~ MN(M_S', Sigma kron D_S'),
  B_S | Sigma ~ MN(M_S, Sigma kron D_S).

Without restrictions these are ordinary normal-inverse-gamma and
matrix-normal-inverse-Wishart priors whose posteriors are available in
closed form; ``conjugate_posterior`` and ``conjugate_posterior_mv`` compute
them and serve both as the baseline sampler's target and as the oracle for
the unconstrained case.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import block_diag

from restricted_regression.core.errors import (
    InvalidDegreesOfFreedomError,
    InvalidParameterError,
    NonPositiveEtaError,
    ShapeMismatchError,
)
from restricted_regression.numerics import (
    as_matrix,
    cholesky,
    ols,
    residual_cross_product,
    solve_spd,
    spd_inverse,
    symmetrize,
)
from restricted_regression.restrictions.system import Partition, permute_design

FloatArray = NDArray[np.float64]


def _vector(x: ArrayLike, size: int, name: str) -> FloatArray:
    arr = np.asarray(x, dtype=np.float64).ravel()
    if arr.size != size:
        raise ShapeMismatchError(f"{name} has {arr.size} entries, expected {size}")
    return arr


def _square(m: ArrayLike, size: int, name: str) -> FloatArray:
    arr = np.asarray(m, dtype=np.float64).reshape(size, size) if size == 0 else as_matrix(m)
    if arr.shape != (size, size):
        raise ShapeMismatchError(f"{name} has shape {arr.shape}, expected ({size}, {size})")
    cholesky(arr)
    return symmetrize(arr) if size else arr


def _positive(value: float, name: str) -> float:
    if not (math.isfinite(value) and value > 0.0):
        raise InvalidParameterError(f"{name} must be > 0, got {value}")
    return float(value)


def _gram_inverse(X: FloatArray) -> FloatArray:
    if X.shape[1] == 0:
        return np.zeros((0, 0))
    return spd_inverse(cholesky(X.T @ X))


# ---------------------------------------------------------------------------
# Univariate
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConjugatePrior:
    """Unpartitioned normal-inverse-gamma prior: sigma^2 ~ IG(a/2, b/2), beta ~ N(mu, sigma^2 C)."""

    a: float
    b: float
    mu: FloatArray
    C: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _positive(self.a, "a"))
        object.__setattr__(self, "b", _positive(self.b, "b"))
        mu = np.asarray(self.mu, dtype=np.float64).ravel()
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "C", _square(self.C, mu.size, "C"))


@dataclass(frozen=True, eq=False)
class PriorSpec:
    """Partitioned conjugate prior for the univariate model.

    Attributes:
        a: IG shape parameter times two.
        b: IG scale parameter times two.
        mu_S: Prior mean of beta_S (q,).
        mu_S_prime: Prior mean of beta_S' (p - q,).
        C_S: Prior scale of beta_S (q x q SPD).
        C_S_prime: Prior scale of beta_S' ((p - q) x (p - q) SPD).
    """

    a: float
    b: float
    mu_S: FloatArray
    mu_S_prime: FloatArray
    C_S: FloatArray
    C_S_prime: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _positive(self.a, "a"))
        object.__setattr__(self, "b", _positive(self.b, "b"))
        mu_S = np.asarray(self.mu_S, dtype=np.float64).ravel()
        mu_S_prime = np.asarray(self.mu_S_prime, dtype=np.float64).ravel()
        object.__setattr__(self, "mu_S", mu_S)
        object.__setattr__(self, "mu_S_prime", mu_S_prime)
        object.__setattr__(self, "C_S", _square(self.C_S, mu_S.size, "C_S"))
        object.__setattr__(
            self, "C_S_prime", _square(self.C_S_prime, mu_S_prime.size, "C_S'")
        )

    @property
    def q(self) -> int:
        return int(self.mu_S.size)

    @property
    def p(self) -> int:
        return int(self.mu_S.size + self.mu_S_prime.size)

    def check_partition(self, partition: Partition) -> None:
        if (self.q, self.p) != (partition.q, partition.p):
            raise ShapeMismatchError(
                f"prior has q={self.q}, p={self.p}; partition has q={partition.q}, p={partition.p}"
            )

    @classmethod
    def from_ols(
        cls, X: ArrayLike, Y: ArrayLike, partition: Partition, *, a: float, b: float
    ) -> "PriorSpec":
        """Means from least squares, scales (X_S'X_S)^{-1} and (X_S''X_S')^{-1}."""
        beta_hat = ols(X, Y)
        mu_S, mu_S_prime = partition.split(beta_hat)
        X_S, X_S_prime = permute_design(X, partition)
        return cls(a, b, mu_S, mu_S_prime, _gram_inverse(X_S), _gram_inverse(X_S_prime))

    @classmethod
    def from_full(
        cls, mu: ArrayLike, C: ArrayLike, partition: Partition, *, a: float, b: float
    ) -> "PriorSpec":
        """Partition a full-order mean and scale; cross-block entries of C are dropped."""
        mean = _vector(mu, partition.p, "mu")
        scale = as_matrix(C)
        S, S_prime = list(partition.S), list(partition.S_prime)
        mu_S, mu_S_prime = partition.split(mean)
        return cls(
            a, b, mu_S, mu_S_prime, scale[np.ix_(S, S)], scale[np.ix_(S_prime, S_prime)]
        )

    def full_mean(self, partition: Partition) -> FloatArray:
        return partition.assemble(self.mu_S, self.mu_S_prime)

    def as_conjugate(self, partition: Partition) -> ConjugatePrior:
        """Equivalent unpartitioned prior in original coefficient order."""
        self.check_partition(partition)
        C_perm = block_diag(self.C_S, self.C_S_prime)
        inv = partition.inverse
        return ConjugatePrior(
            self.a, self.b, self.full_mean(partition), C_perm[np.ix_(inv, inv)]
        )


@dataclass(frozen=True, eq=False)
class ConjugatePosterior:
    """Normal-inverse-gamma posterior: sigma^2 | Y ~ IG(nu, eta), beta | sigma^2, Y ~ N(mean, sigma^2 scale)."""

    mean: FloatArray
    precision: FloatArray
    scale: FloatArray
    nu: float
    eta: float

    @property
    def sigma2_mean(self) -> float:
        return self.eta / (self.nu - 1.0)

    @property
    def sigma2_sd(self) -> float:
        return self.sigma2_mean / math.sqrt(self.nu - 2.0)

    @property
    def beta_cov(self) -> FloatArray:
        """Marginal covariance of beta (multivariate t)."""
        return self.sigma2_mean * self.scale

    @property
    def beta_sd(self) -> FloatArray:
        return np.sqrt(np.diag(self.beta_cov))


def conjugate_posterior(X: ArrayLike, Y: ArrayLike, prior: ConjugatePrior) -> ConjugatePosterior:
    """Closed-form posterior of the unrestricted model.

    Raises:
        NonPositiveEtaError: If the posterior scale is not positive.
    """
    design = as_matrix(X)
    y = np.asarray(Y, dtype=np.float64).ravel()
    prior_prec = spd_inverse(cholesky(prior.C))
    precision = symmetrize(design.T @ design + prior_prec)
    factor = cholesky(precision)
    rhs = design.T @ y + prior_prec @ prior.mu
    mean = solve_spd(factor, rhs)
    eta = 0.5 * (prior.b + y @ y + prior.mu @ prior_prec @ prior.mu - mean @ rhs)
    if not eta > 0.0:
        raise NonPositiveEtaError(f"posterior scale eta = {eta} is not positive")
    return ConjugatePosterior(
        mean=mean,
        precision=precision,
        scale=spd_inverse(factor),
        nu=0.5 * (y.size + prior.a),
        eta=float(eta),
    )


# ---------------------------------------------------------------------------
# Multivariate
# ---------------------------------------------------------------------------


def _check_df(r: float, k: int) -> float:
    if not (math.isfinite(r) and r > k - 1):
        raise InvalidDegreesOfFreedomError(f"IW degrees of freedom must exceed {k - 1}, got {r}")
    return float(r)


def _block(m: ArrayLike, rows: int, cols: int, name: str) -> FloatArray:
    arr = np.asarray(m, dtype=np.float64).reshape(rows, cols) if rows == 0 else as_matrix(m)
    if arr.shape != (rows, cols):
        raise ShapeMismatchError(f"{name} has shape {arr.shape}, expected ({rows}, {cols})")
    return arr


@dataclass(frozen=True, eq=False)
class ConjugatePriorMV:
    """Unpartitioned matrix-normal-inverse-Wishart prior."""

    r: float
    Q: FloatArray
    M: FloatArray
    D: FloatArray

    def __post_init__(self) -> None:
        M = as_matrix(self.M)
        p, k = M.shape
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "Q", _square(self.Q, k, "Q"))
        object.__setattr__(self, "D", _square(self.D, p, "D"))
        object.__setattr__(self, "r", _check_df(self.r, k))


@dataclass(frozen=True, eq=False)
class PriorSpecMV:
    """Partitioned conjugate prior for the multivariate model.

    Attributes:
        r: IW degrees of freedom, > k - 1.
        Q: IW scale (k x k SPD).
        M_S: Prior mean of B_S (q x k).
        M_S_prime: Prior mean of B_S' ((p - q) x k).
        D_S: Row scale of B_S (q x q SPD).
        D_S_prime: Row scale of B_S' ((p - q) x (p - q) SPD).
    """

    r: float
    Q: FloatArray
    M_S: FloatArray
    M_S_prime: FloatArray
    D_S: FloatArray
    D_S_prime: FloatArray

    def __post_init__(self) -> None:
        Q = as_matrix(self.Q)
        k = Q.shape[0]
        M_S = as_matrix(self.M_S)
        q = M_S.shape[0]
        M_S_prime = np.asarray(self.M_S_prime, dtype=np.float64)
        free = M_S_prime.shape[0] if M_S_prime.ndim == 2 else 0  # noqa: PLR2004
        object.__setattr__(self, "Q", _square(Q, k, "Q"))
        object.__setattr__(self, "M_S", _block(M_S, q, k, "M_S"))
        object.__setattr__(self, "M_S_prime", _block(M_S_prime, free, k, "M_S'"))
        object.__setattr__(self, "D_S", _square(self.D_S, q, "D_S"))
        object.__setattr__(self, "D_S_prime", _square(self.D_S_prime, free, "D_S'"))
        object.__setattr__(self, "r", _check_df(self.r, k))

    @property
    def q(self) -> int:
        return int(self.M_S.shape[0])

    @property
    def p(self) -> int:
        return int(self.M_S.shape[0] + self.M_S_prime.shape[0])

    @property
    def k(self) -> int:
        return int(self.Q.shape[0])

    def check_partition(self, partition: Partition) -> None:
        if (self.q, self.p) != (partition.q, partition.p):
            raise ShapeMismatchError(
                f"prior has q={self.q}, p={self.p}; partition has q={partition.q}, p={partition.p}"
            )

    @classmethod
    def from_ols(
        cls,
        X: ArrayLike,
        Y: ArrayLike,
        partition: Partition,
        *,
        r: float,
        q_divisor: float | None = None,
    ) -> "PriorSpecMV":
        """Means from least squares, row scales from inverse Gram blocks.

        Q is the least-squares residual cross-product divided by
        ``q_divisor`` (default n).
        """
        design = as_matrix(X)
        response = as_matrix(Y)
        B_hat = ols(design, response)
        M_S, M_S_prime = partition.split(B_hat)
        X_S, X_S_prime = permute_design(design, partition)
        divisor = float(design.shape[0]) if q_divisor is None else _positive(q_divisor, "q_divisor")
        Q = residual_cross_product(design, response) / divisor
        return cls(r, Q, M_S, M_S_prime, _gram_inverse(X_S), _gram_inverse(X_S_prime))

    def full_mean(self, partition: Partition) -> FloatArray:
        return partition.assemble(self.M_S, self.M_S_prime)

    def as_conjugate(self, partition: Partition) -> ConjugatePriorMV:
        self.check_partition(partition)
        D_perm = block_diag(self.D_S, self.D_S_prime)
        inv = partition.inverse
        return ConjugatePriorMV(self.r, self.Q, self.full_mean(partition), D_perm[np.ix_(inv, inv)])


@dataclass(frozen=True, eq=False)
class ConjugatePosteriorMV:
    """Sigma | Y ~ IW(df, V), B | Sigma, Y ~ MN(mean, Sigma kron scale)."""

    mean: FloatArray
    precision: FloatArray
    scale: FloatArray
    df: float
    V: FloatArray

    @property
    def sigma_mean(self) -> FloatArray:
        k = self.V.shape[0]
        return self.V / (self.df - k - 1.0)

    @property
    def beta_cov(self) -> FloatArray:
        """Covariance of vec(B), column-major."""
        return np.kron(self.sigma_mean, self.scale)

    @property
    def beta_sd(self) -> FloatArray:
        """Marginal SDs arranged like B (p x k)."""
        return np.sqrt(np.outer(np.diag(self.scale), np.diag(self.sigma_mean)))


def conjugate_posterior_mv(
    X: ArrayLike, Y: ArrayLike, prior: ConjugatePriorMV
) -> ConjugatePosteriorMV:
    """Closed-form matrix-normal-inverse-Wishart posterior of the unrestricted model."""
    design = as_matrix(X)
    response = as_matrix(Y)
    prior_prec = spd_inverse(cholesky(prior.D))
    precision = symmetrize(design.T @ design + prior_prec)
    factor = cholesky(precision)
    rhs = design.T @ response + prior_prec @ prior.M
    mean = solve_spd(factor, rhs)
    V = symmetrize(
        prior.Q + response.T @ response + prior.M.T @ prior_prec @ prior.M - mean.T @ rhs
    )
    cholesky(V)
    return ConjugatePosteriorMV(
        mean=mean,
        precision=precision,
        scale=spd_inverse(factor),
        df=response.shape[0] + prior.r,
        V=V,
    )
