"""Partitioned collapsed Gibbs sampler for the univariate restricted model.

Each iteration draws sigma^2 from its collapsed inverse-gamma marginal,
beta_S' from its collapsed normal given sigma^2, and finally beta_S from a
normal truncated to K - H_S' beta_S' <= H_S beta_S <= G - H_S' beta_S'. The
last step runs a few component-wise Gibbs sweeps on theta = H_S beta_S.

Only beta_S is ever truncated, so an iteration touches q coordinates where
an unpartitioned sampler touches p.
"""

import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass
from functools import partial

import numpy as np
from numpy.typing import ArrayLike, NDArray

from restricted_regression.core.errors import (
    InvalidParameterError,
    NonPositiveEtaError,
    ShapeMismatchError,
)
from restricted_regression.datasets import Dataset
from restricted_regression.distributions import (
    DEFAULT_INNER_SWEEPS,
    BoxBounds,
    LinearTransform,
    RngStream,
    gibbs_box_sweeps,
    sample_inverse_gamma,
    sample_mvn,
)
from restricted_regression.engines.chain import Chain, resolve_burn_in
from restricted_regression.engines.priors import PriorSpec
from restricted_regression.numerics import (
    SpdFactor,
    as_matrix,
    cholesky,
    solve_spd,
    spd_inverse,
    symmetrize,
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
BoundsFn = Callable[[FloatArray], BoxBounds]


@dataclass(frozen=True, eq=False)
class PosteriorCache:
    """Quantities of the collapsed conditionals that do not change across iterations.

    Attributes:
        nu_tilde: Shape of the sigma^2 marginal, (n + a) / 2.
        eta_tilde: Scale of the sigma^2 marginal.
        precision_S: X_S'X_S + C_S^{-1}.
        Ctilde_S: Inverse of ``precision_S``.
        W: X_S'Y + C_S^{-1} mu_S.
        cross: X_S'X_S'.
        precision_S_prime: Precision of beta_S' after collapsing beta_S.
        Ctilde_S_prime: Inverse of ``precision_S_prime``.
        mu_tilde_S_prime: Mean of beta_S' after collapsing beta_S.
        factor_S_prime: Cholesky factor of the inverse of ``precision_S_prime``.
    """

    nu_tilde: float
    eta_tilde: float
    precision_S: FloatArray
    Ctilde_S: FloatArray
    W: FloatArray
    cross: FloatArray
    precision_S_prime: FloatArray
    Ctilde_S_prime: FloatArray
    mu_tilde_S_prime: FloatArray
    factor_S_prime: SpdFactor

    def mean_S(self, beta_S_prime: ArrayLike) -> FloatArray:
        """Mean of beta_S given beta_S' (before truncation)."""
        return self.Ctilde_S @ (self.W - self.cross @ np.asarray(beta_S_prime, dtype=np.float64))


@dataclass(frozen=True)
class ChainState:
    sigma2: float
    beta_S_prime: FloatArray
    beta_S: FloatArray


def _inverse_or_empty(m: FloatArray) -> FloatArray:
    return spd_inverse(cholesky(m)) if m.size else np.zeros((0, 0))


def compute_posterior_cache(
    X_S: ArrayLike, X_S_prime: ArrayLike, Y: ArrayLike, prior: PriorSpec
) -> PosteriorCache:
    """Precompute the collapsed posterior blocks.

    Raises:
        NotPositiveDefiniteError: If a posterior precision is not SPD.
        NonPositiveEtaError: If the sigma^2 scale is not positive.
    """
    xs = as_matrix(X_S)
    xf = np.asarray(X_S_prime, dtype=np.float64).reshape(xs.shape[0], -1)
    y = np.asarray(Y, dtype=np.float64).ravel()
    if y.size != xs.shape[0]:
        raise ShapeMismatchError(f"design has {xs.shape[0]} rows, response has {y.size}")

    prior_prec_S = spd_inverse(cholesky(prior.C_S))
    prior_prec_F = _inverse_or_empty(prior.C_S_prime)

    precision_S = symmetrize(xs.T @ xs + prior_prec_S)
    factor_S = cholesky(precision_S)
    Ctilde_S = spd_inverse(factor_S)
    W = xs.T @ y + prior_prec_S @ prior.mu_S
    cross = xs.T @ xf

    free = xf.shape[1]
    if free:
        precision_F = symmetrize(xf.T @ xf + prior_prec_F - cross.T @ Ctilde_S @ cross)
        factor_F = cholesky(precision_F)
        rhs_F = prior_prec_F @ prior.mu_S_prime + xf.T @ y - cross.T @ Ctilde_S @ W
        mu_tilde_F = solve_spd(factor_F, rhs_F)
        Ctilde_F = spd_inverse(factor_F)
        factor_cov_F = cholesky(Ctilde_F)
        quad_F = float(prior.mu_S_prime @ prior_prec_F @ prior.mu_S_prime - mu_tilde_F @ rhs_F)
    else:
        precision_F = np.zeros((0, 0))
        Ctilde_F = np.zeros((0, 0))
        mu_tilde_F = np.zeros(0)
        factor_cov_F = SpdFactor(lower=np.zeros((0, 0)))
        quad_F = 0.0

    eta = 0.5 * (
        prior.b
        + float(y @ y)
        + quad_F
        + float(prior.mu_S @ prior_prec_S @ prior.mu_S)
        - float(W @ Ctilde_S @ W)
    )
    if not eta > 0.0:
        raise NonPositiveEtaError(f"posterior scale eta = {eta} is not positive")

    return PosteriorCache(
        nu_tilde=0.5 * (y.size + prior.a),
        eta_tilde=eta,
        precision_S=precision_S,
        Ctilde_S=Ctilde_S,
        W=W,
        cross=cross,
        precision_S_prime=precision_F,
        Ctilde_S_prime=Ctilde_F,
        mu_tilde_S_prime=mu_tilde_F,
        factor_S_prime=factor_cov_F,
    )


def gibbs_step(
    cache: PosteriorCache,
    state: ChainState,
    bounds_fn: BoundsFn,
    rng: RngStream,
    *,
    transform: LinearTransform,
    theta_precision: FloatArray | None = None,
    inner_sweeps: int = DEFAULT_INNER_SWEEPS,
) -> ChainState:
    """One collapsed Gibbs iteration.

    Args:
        cache: Output of :func:`compute_posterior_cache`.
        state: Current draw; its beta_S seeds the truncated sweeps.
        bounds_fn: Maps beta_S' to the box for theta = H_S beta_S.
        rng: Random stream.
        transform: The map beta_S -> H_S beta_S.
        theta_precision: H_S^{-T} precision_S H_S^{-1}; computed when omitted.
        inner_sweeps: Component-wise sweeps per truncated draw.

    Returns:
        The next state, with beta_S strictly inside its box.
    """
    sigma2 = sample_inverse_gamma(cache.nu_tilde, cache.eta_tilde, rng)
    beta_S_prime = sample_mvn(cache.mu_tilde_S_prime, cache.factor_S_prime, rng, scale=sigma2)

    box = bounds_fn(beta_S_prime)
    if theta_precision is None:
        theta_precision = transform.pullback_precision(cache.precision_S)
    theta_mean = transform.apply(cache.mean_S(beta_S_prime))
    theta_init = box.repair(transform.apply(state.beta_S))
    theta = gibbs_box_sweeps(
        theta_init, theta_mean, theta_precision / sigma2, box, inner_sweeps, rng
    )
    return ChainState(sigma2=sigma2, beta_S_prime=beta_S_prime, beta_S=transform.solve(theta))


def default_sigma2_init(a: float, b: float) -> float:
    """Prior mean of sigma^2 when it exists, otherwise 1."""
    return b / (a - 2.0) if a > 2.0 else 1.0  # noqa: PLR2004


def run_chain(
    data: Dataset,
    system: RestrictionSystem,
    prior: PriorSpec,
    iters: int,
    burn_in: int | None = None,
    seed: int = 0,
    *,
    inner_sweeps: int = DEFAULT_INNER_SWEEPS,
    sigma2_init: float | None = None,
    partition: Partition | None = None,
    rng: RngStream | None = None,
) -> Chain:
    """Run the partitioned sampler.

    Args:
        data: Design and (n,) response.
        system: Univariate restriction system.
        prior: Partitioned prior conforming to ``partition``.
        iters: Number of iterations, >= 1.
        burn_in: Leading draws to discard; default 10% of ``iters``.
        seed: Seed of the stream when ``rng`` is not given.
        inner_sweeps: Component-wise sweeps per truncated draw.
        sigma2_init: Starting variance; default b / (a - 2) when a > 2,
            else 1.
        partition: Column split; selected from ``system`` when omitted.
        rng: Explicit stream, overriding ``seed``.

    Returns:
        The chain, coefficients in original order.

    Raises:
        ShapeMismatchError: If data, system and prior do not conform.
        InvalidParameterError: On bad iteration counts or sweeps.
        ModelError: Any restriction or posterior degeneracy.

    Example:
        ```python
        system = RestrictionSystem.from_bounds(H, G)
        partition = select_partition(system)
        prior = PriorSpec.from_ols(data.X, data.Y, partition, a=6, b=2)
        chain = run_chain(data, system, prior, iters=5000, seed=1)
        ```
    """
    burn = resolve_burn_in(iters, burn_in)
    if inner_sweeps < 1:
        raise InvalidParameterError(f"inner sweeps must be >= 1, got {inner_sweeps}")
    if system.is_multivariate:
        raise ShapeMismatchError("univariate sampler needs vector bounds K and G")
    validate(system)
    partition = partition or select_partition(system)
    prior.check_partition(partition)
    y = data.Y
    if y.ndim != 1:
        raise ShapeMismatchError(f"response must be a vector, got shape {y.shape}")

    X_S, X_S_prime = permute_design(data.X, partition)
    cache = compute_posterior_cache(X_S, X_S_prime, y, prior)
    transform = LinearTransform(partition.H_S)
    theta_precision = transform.pullback_precision(cache.precision_S)
    bounds_fn = partial(conditional_box, partition, system)

    start = feasible_point(system, partition, anchor=prior.full_mean(partition))
    start_S, start_S_prime = partition.split(start)
    sigma2_0 = default_sigma2_init(prior.a, prior.b) if sigma2_init is None else float(sigma2_init)
    if not (math.isfinite(sigma2_0) and sigma2_0 > 0.0):
        raise InvalidParameterError(f"initial sigma^2 must be positive, got {sigma2_0}")
    state = ChainState(sigma2=sigma2_0, beta_S_prime=start_S_prime, beta_S=start_S)

    stream = rng or RngStream(seed)
    sigma2_draws = np.empty(iters)
    beta_draws = np.empty((iters, partition.p))
    started = time.perf_counter()
    for t in range(iters):
        state = gibbs_step(
            cache,
            state,
            bounds_fn,
            stream,
            transform=transform,
            theta_precision=theta_precision,
            inner_sweeps=inner_sweeps,
        )
        sigma2_draws[t] = state.sigma2
        beta_draws[t] = partition.assemble(state.beta_S, state.beta_S_prime)
    elapsed = time.perf_counter() - started

    logger.debug(
        "partitioned chain finished",
        extra={"iters": iters, "S": [j + 1 for j in partition.S], "seconds": round(elapsed, 4)},
    )
    return Chain(
        sigma2=sigma2_draws,
        beta=beta_draws,
        burn_in=burn,
        seed=stream.seed,
        method="bks",
        config={
            "iters": iters,
            "burn_in": burn,
            "inner_sweeps": inner_sweeps,
            "S": [j + 1 for j in partition.S],
            "sigma2_init": sigma2_0,
        },
        seconds_per_iteration=elapsed / iters,
    )
