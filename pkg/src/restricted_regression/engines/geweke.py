"""Baseline Gibbs sampler for a square, invertible restriction matrix.

The whole coefficient vector is mapped to theta = H beta and every
coordinate of theta is redrawn from its truncated conditional under the
unpartitioned conjugate posterior. sigma^2 is drawn from the same collapsed
inverse-gamma marginal as the partitioned sampler, so the two samplers differ
only in how many coordinates they truncate.
"""

import logging
import time

import numpy as np

from restricted_regression.core.errors import (
    InvalidParameterError,
    NotSquareError,
    ShapeMismatchError,
    SingularError,
)
from restricted_regression.datasets import Dataset
from restricted_regression.distributions import (
    DEFAULT_INNER_SWEEPS,
    BoxBounds,
    LinearTransform,
    RngStream,
    gibbs_box_sweeps,
    sample_inverse_gamma,
)
from restricted_regression.engines.chain import Chain, resolve_burn_in
from restricted_regression.engines.priors import ConjugatePrior, conjugate_posterior
from restricted_regression.restrictions import RestrictionSystem
from restricted_regression.validators import RestrictionValidator

logger = logging.getLogger(__name__)


def _square_transform(system: RestrictionSystem) -> LinearTransform:
    if system.is_multivariate:
        raise ShapeMismatchError("baseline sampler needs vector bounds K and G")
    if system.q != system.p:
        raise NotSquareError(f"restriction matrix must be square, got {system.q}x{system.p}")
    if np.linalg.matrix_rank(system.H) < system.p:
        raise SingularError("square restriction matrix is singular")
    return LinearTransform(system.H)


def geweke_baseline_chain(
    data: Dataset,
    square_system: RestrictionSystem,
    prior: ConjugatePrior,
    iters: int,
    burn_in: int | None = None,
    seed: int = 0,
    *,
    inner_sweeps: int = DEFAULT_INNER_SWEEPS,
    rng: RngStream | None = None,
) -> Chain:
    """Run the unpartitioned baseline sampler.

    Args:
        data: Design and (n,) response.
        square_system: System with a p x p invertible H; rows with infinite
            bounds on both sides are unconstrained.
        prior: Unpartitioned conjugate prior.
        iters: Number of iterations, >= 1.
        burn_in: Leading draws to discard; default 10% of ``iters``.
        seed: Seed of the stream when ``rng`` is not given.
        inner_sweeps: Component-wise sweeps per iteration.
        rng: Explicit stream, overriding ``seed``.

    Raises:
        NotSquareError: If H is not square.
        SingularError: If H is singular.
    """
    burn = resolve_burn_in(iters, burn_in)
    if inner_sweeps < 1:
        raise InvalidParameterError(f"inner sweeps must be >= 1, got {inner_sweeps}")
    transform = _square_transform(square_system)
    # unbounded padding rows are expected; only errors count
    RestrictionValidator().validate(square_system).raise_for_status()
    if prior.mu.size != square_system.p or data.Y.ndim != 1:
        raise ShapeMismatchError(
            f"prior has {prior.mu.size} coefficients, restriction matrix has {square_system.p}"
        )

    posterior = conjugate_posterior(data.X, data.Y, prior)
    box = BoxBounds(square_system.K, square_system.G)
    theta_mean = transform.apply(posterior.mean)
    theta_precision = transform.pullback_precision(posterior.precision)
    theta = box.repair(theta_mean)

    stream = rng or RngStream(seed)
    sigma2_draws = np.empty(iters)
    beta_draws = np.empty((iters, square_system.p))
    started = time.perf_counter()
    for t in range(iters):
        sigma2 = sample_inverse_gamma(posterior.nu, posterior.eta, stream)
        theta = gibbs_box_sweeps(
            theta, theta_mean, theta_precision / sigma2, box, inner_sweeps, stream
        )
        sigma2_draws[t] = sigma2
        beta_draws[t] = transform.solve(theta)
    elapsed = time.perf_counter() - started

    logger.debug("baseline chain finished", extra={"iters": iters, "seconds": round(elapsed, 4)})
    return Chain(
        sigma2=sigma2_draws,
        beta=beta_draws,
        burn_in=burn,
        seed=stream.seed,
        method="geweke",
        config={"iters": iters, "burn_in": burn, "inner_sweeps": inner_sweeps},
        seconds_per_iteration=elapsed / iters,
    )
