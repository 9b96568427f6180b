"""Partitioned Gibbs sampler for the multivariate restricted model.

Y = X B + E with rows of E ~ N_k(0, Sigma) and K <= R B <= G applied
column-wise. Each iteration draws Sigma ~ IW(n + r, V), B_S' from its
collapsed matrix normal, and vec(B_S) from N(vec(M_S), Sigma kron D_S)
truncated to the vec-ed conditional box on vec(R_S B_S).
"""

import logging
import time
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from restricted_regression.core.errors import InvalidParameterError, ShapeMismatchError
from restricted_regression.datasets import Dataset
from restricted_regression.distributions import (
    DEFAULT_INNER_SWEEPS,
    InverseWishart,
    LinearTransform,
    RngStream,
    gibbs_box_sweeps,
    sample_matrix_normal_factored,
)
from restricted_regression.engines.chain import ChainMV, resolve_burn_in
from restricted_regression.engines.priors import PriorSpecMV
from restricted_regression.numerics import (
    SpdFactor,
    as_matrix,
    cholesky,
    kron,
    solve_spd,
    spd_inverse,
    symmetrize,
    unvec,
    vec,
)
from restricted_regression.restrictions import (
    Partition,
    RestrictionSystem,
    conditional_box,
    feasible_point,
    permute_design,
    select_partition,
    validate,
)

logger = logging.getLogger(__name__)

FloatArray = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class PosteriorCacheMV:
    """State-independent blocks of the multivariate conditionals.

    Attributes:
        df_post: n + r.
        V: Posterior IW scale.
        precision_S: D_S^{-1} + X_S'X_S.
        Dtilde_S: Inverse of ``precision_S``.
        W: X_S'Y + D_S^{-1} M_S (q x k).
        cross: X_S'X_S'.
        Dtilde_S_prime: Row covariance of B_S' after collapsing B_S.
        Mtilde_S_prime: Mean of B_S' after collapsing B_S.
        factor_S_prime: Cholesky factor of ``Dtilde_S_prime``.
        inverse_wishart: Cached IW(n + r, V) sampler.
    """

    df_post: float
    V: FloatArray
    precision_S: FloatArray
    Dtilde_S: FloatArray
    W: FloatArray
    cross: FloatArray
    Dtilde_S_prime: FloatArray
    Mtilde_S_prime: FloatArray
    factor_S_prime: SpdFactor
    inverse_wishart: InverseWishart

    @property
    def k(self) -> int:
        return int(self.V.shape[0])

    def mean_S(self, B_S_prime: ArrayLike) -> FloatArray:
        return self.Dtilde_S @ (self.W - self.cross @ np.asarray(B_S_prime, dtype=np.float64))


@dataclass(frozen=True)
class ChainStateMV:
    Sigma: FloatArray
    B_S_prime: FloatArray
    B_S: FloatArray


def compute_posterior_cache_mv(
    X_S: ArrayLike, X_S_prime: ArrayLike, Y: ArrayLike, prior: PriorSpecMV
) -> PosteriorCacheMV:
    """Precompute the collapsed posterior blocks.

    Raises:
        NotPositiveDefiniteError: If V or a posterior precision is not SPD.
    """
    xs = as_matrix(X_S)
    xf = np.asarray(X_S_prime, dtype=np.float64).reshape(xs.shape[0], -1)
    y = as_matrix(Y)
    if y.shape != (xs.shape[0], prior.k):
        raise ShapeMismatchError(f"response has shape {y.shape}, expected ({xs.shape[0]}, {prior.k})")

    prior_prec_S = spd_inverse(cholesky(prior.D_S))
    precision_S = symmetrize(prior_prec_S + xs.T @ xs)
    Dtilde_S = spd_inverse(cholesky(precision_S))
    W = xs.T @ y + prior_prec_S @ prior.M_S
    cross = xs.T @ xf
    V = prior.Q + y.T @ y + prior.M_S.T @ prior_prec_S @ prior.M_S - W.T @ Dtilde_S @ W

    if xf.shape[1]:
        prior_prec_F = spd_inverse(cholesky(prior.D_S_prime))
        precision_F = symmetrize(prior_prec_F + xf.T @ xf - cross.T @ Dtilde_S @ cross)
        factor_F = cholesky(precision_F)
        rhs_F = prior_prec_F @ prior.M_S_prime + xf.T @ y - cross.T @ Dtilde_S @ W
        Mtilde_F = solve_spd(factor_F, rhs_F)
        Dtilde_F = spd_inverse(factor_F)
        V = V + prior.M_S_prime.T @ prior_prec_F @ prior.M_S_prime - Mtilde_F.T @ rhs_F
        factor_cov_F = cholesky(Dtilde_F)
    else:
        Mtilde_F = np.zeros((0, prior.k))
        Dtilde_F = np.zeros((0, 0))
        factor_cov_F = SpdFactor(lower=np.zeros((0, 0)))

    V = symmetrize(V)
    df_post = y.shape[0] + prior.r
    return PosteriorCacheMV(
        df_post=df_post,
        V=V,
        precision_S=precision_S,
        Dtilde_S=Dtilde_S,
        W=W,
        cross=cross,
        Dtilde_S_prime=Dtilde_F,
        Mtilde_S_prime=Mtilde_F,
        factor_S_prime=factor_cov_F,
        inverse_wishart=InverseWishart(df_post, V),
    )


def gibbs_step_mv(
    cache: PosteriorCacheMV,
    state: ChainStateMV,
    system: RestrictionSystem,
    partition: Partition,
    rng: RngStream,
    *,
    transform: LinearTransform | None = None,
    inner_sweeps: int = DEFAULT_INNER_SWEEPS,
) -> ChainStateMV:
    """One Gibbs iteration of the multivariate sampler.

    Args:
        cache: Output of :func:`compute_posterior_cache_mv`.
        state: Current draw; vec(R_S B_S) seeds the truncated sweeps.
        system: Multivariate restriction system.
        partition: Column split of R.
        rng: Random stream.
        transform: I_k kron R_S; built when omitted.
        inner_sweeps: Component-wise sweeps per truncated draw.
    """
    k = cache.k
    transform = transform or LinearTransform(kron(np.eye(k), partition.H_S))

    Sigma = cache.inverse_wishart.draw(rng)
    sigma_factor = cholesky(Sigma)
    B_S_prime = sample_matrix_normal_factored(
        cache.Mtilde_S_prime, sigma_factor, cache.factor_S_prime, rng
    )

    box = conditional_box(partition, system, B_S_prime)
    theta_mean = transform.apply(vec(cache.mean_S(B_S_prime)))
    theta_precision = transform.pullback_precision(
        kron(spd_inverse(sigma_factor), cache.precision_S)
    )
    theta_init = box.repair(transform.apply(vec(state.B_S)))
    theta = gibbs_box_sweeps(theta_init, theta_mean, theta_precision, box, inner_sweeps, rng)
    B_S = unvec(transform.solve(theta), partition.q, k)
    return ChainStateMV(Sigma=Sigma, B_S_prime=B_S_prime, B_S=B_S)


def default_sigma_init(r: float, Q: FloatArray) -> FloatArray:
    """Prior mean Q / (r - k - 1) when it exists, otherwise Q."""
    k = Q.shape[0]
    return Q / (r - k - 1.0) if r > k + 1 else Q.copy()


def run_chain_mv(
    data: Dataset,
    system: RestrictionSystem,
    prior: PriorSpecMV,
    iters: int,
    burn_in: int | None = None,
    seed: int = 0,
    *,
    inner_sweeps: int = DEFAULT_INNER_SWEEPS,
    sigma_init: ArrayLike | None = None,
    partition: Partition | None = None,
    rng: RngStream | None = None,
) -> ChainMV:
    """Run the multivariate partitioned sampler.

    Args:
        data: Design and (n, k) response.
        system: Multivariate restriction system (K, G of shape (q, k)).
        prior: Partitioned prior conforming to ``partition``.
        iters: Number of iterations, >= 1.
        burn_in: Leading draws to discard; default 10% of ``iters``.
        seed: Seed of the stream when ``rng`` is not given.
        inner_sweeps: Component-wise sweeps per truncated draw.
        sigma_init: Starting covariance; default Q / (r - k - 1) when
            r > k + 1, else Q.
        partition: Column split; selected from ``system`` when omitted.
        rng: Explicit stream, overriding ``seed``.

    Returns:
        The chain, rows of B in original order.
    """
    burn = resolve_burn_in(iters, burn_in)
    if inner_sweeps < 1:
        raise InvalidParameterError(f"inner sweeps must be >= 1, got {inner_sweeps}")
    if not system.is_multivariate:
        raise ShapeMismatchError("multivariate sampler needs matrix bounds K and G")
    validate(system)
    partition = partition or select_partition(system)
    prior.check_partition(partition)
    if data.Y.ndim != 2 or data.k != system.k or prior.k != system.k:  # noqa: PLR2004
        raise ShapeMismatchError(
            f"response has {data.k} columns, bounds have {system.k}, prior has {prior.k}"
        )

    X_S, X_S_prime = permute_design(data.X, partition)
    cache = compute_posterior_cache_mv(X_S, X_S_prime, data.Y, prior)
    k = system.k
    transform = LinearTransform(kron(np.eye(k), partition.H_S))

    start = feasible_point(system, partition, anchor=prior.full_mean(partition))
    start_S, start_S_prime = partition.split(start)
    Sigma0 = default_sigma_init(prior.r, prior.Q) if sigma_init is None else as_matrix(sigma_init)
    cholesky(Sigma0)
    state = ChainStateMV(Sigma=Sigma0, B_S_prime=start_S_prime, B_S=start_S)

    stream = rng or RngStream(seed)
    sigma_draws = np.empty((iters, k, k))
    beta_draws = np.empty((iters, partition.p, k))
    started = time.perf_counter()
    for t in range(iters):
        state = gibbs_step_mv(
            cache, state, system, partition, stream, transform=transform, inner_sweeps=inner_sweeps
        )
        sigma_draws[t] = state.Sigma
        beta_draws[t] = partition.assemble(state.B_S, state.B_S_prime)
    elapsed = time.perf_counter() - started

    logger.debug(
        "multivariate chain finished",
        extra={"iters": iters, "S": [j + 1 for j in partition.S], "seconds": round(elapsed, 4)},
    )
    return ChainMV(
        sigma=sigma_draws,
        beta=beta_draws,
        burn_in=burn,
        seed=stream.seed,
        method="bks",
        config={
            "iters": iters,
            "burn_in": burn,
            "inner_sweeps": inner_sweeps,
            "S": [j + 1 for j in partition.S],
        },
        seconds_per_iteration=elapsed / iters,
    )
