"""Tests for the priors and the Gibbs samplers."""

import numpy as np
import pytest

from restricted_regression.core.errors import (
    EmptyChainError,
    EmptyIntervalError,
    InvalidDegreesOfFreedomError,
    InvalidParameterError,
    NotSquareError,
    ShapeMismatchError,
    SingularError,
)
from restricted_regression.datasets import Dataset
from restricted_regression.distributions import RngStream
from restricted_regression.engines import (
    Chain,
    PriorSpec,
    PriorSpecMV,
    compute_posterior_cache,
    conjugate_posterior,
    conjugate_posterior_mv,
    geweke_baseline_chain,
    resolve_burn_in,
    run_chain,
    run_chain_mv,
)
from restricted_regression.experiments import catalog
from restricted_regression.experiments.simulation import simulate_multivariate
from restricted_regression.restrictions import (
    RestrictionSystem,
    check_feasible,
    permute_design,
    select_partition,
)

pytestmark = pytest.mark.unit


def _unbounded(q: int, p: int, k: int | None = None) -> RestrictionSystem:
    H = np.eye(p)[p - q :]
    shape = (q,) if k is None else (q, k)
    return RestrictionSystem(H, np.full(shape, -np.inf), np.full(shape, np.inf))


def _example2_data(seed: int = 3) -> Dataset:
    return simulate_multivariate(
        catalog.EXAMPLE2_B, catalog.EXAMPLE2_SIGMA, catalog.EXAMPLE2_N, RngStream(seed)
    )


# ---------------------------------------------------------------------------
# Burn-in and chain containers
# ---------------------------------------------------------------------------


def test_resolve_burn_in_defaults_to_ten_percent():
    assert resolve_burn_in(5000, None) == 500
    assert resolve_burn_in(9, None) == 0
    assert resolve_burn_in(100, 0) == 0


@pytest.mark.parametrize(("iters", "burn_in"), [(0, None), (10, 10), (10, -1)])
def test_resolve_burn_in_rejects(iters, burn_in):
    with pytest.raises(InvalidParameterError):
        resolve_burn_in(iters, burn_in)


def test_chain_posterior_mean_uses_kept_draws():
    chain = Chain(
        sigma2=np.array([100.0, 1.0, 3.0]), beta=np.array([[50.0], [1.0], [2.0]]), burn_in=1
    )
    sigma2, beta = chain.posterior_mean()
    assert sigma2 == 2.0
    assert np.array_equal(beta, [1.5])
    assert list(chain.to_frame().columns) == ["iter", "sigma2", "beta_1"]


def test_chain_posterior_mean_empty():
    chain = Chain(sigma2=np.ones(2), beta=np.ones((2, 1)), burn_in=2)
    with pytest.raises(EmptyChainError):
        chain.posterior_mean()


# ---------------------------------------------------------------------------
# Priors
# ---------------------------------------------------------------------------


def test_collapsed_scale_matches_conjugate_posterior(example1_data):
    system = catalog.restriction1()
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    X_S, X_S_prime = permute_design(example1_data.X, partition)
    cache = compute_posterior_cache(X_S, X_S_prime, example1_data.Y, prior)
    posterior = conjugate_posterior(
        example1_data.X, example1_data.Y, prior.as_conjugate(partition)
    )
    assert cache.nu_tilde == pytest.approx(posterior.nu)
    assert cache.eta_tilde == pytest.approx(posterior.eta, rel=1e-9)


def test_prior_as_conjugate_restores_order():
    partition = select_partition(catalog.restriction1())
    mu = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    prior = PriorSpec.from_full(mu, np.diag(mu), partition, a=1.0, b=1.0)
    conjugate = prior.as_conjugate(partition)
    assert np.array_equal(conjugate.mu, mu)
    assert np.array_equal(conjugate.C, np.diag(mu))


def test_prior_rejects_non_positive_hyperparameters():
    with pytest.raises(InvalidParameterError):
        PriorSpec(0.0, 1.0, np.zeros(1), np.zeros(1), np.eye(1), np.eye(1))


def test_prior_mv_rejects_low_df():
    with pytest.raises(InvalidDegreesOfFreedomError):
        PriorSpecMV(1.0, np.eye(2), np.zeros((1, 2)), np.zeros((1, 2)), np.eye(1), np.eye(1))


# ---------------------------------------------------------------------------
# Univariate sampler
# ---------------------------------------------------------------------------


def test_unbounded_chain_matches_conjugate_posterior(example1_data):
    system = _unbounded(3, 5)
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    chain = run_chain(example1_data, system, prior, iters=6000, seed=1, partition=partition)
    posterior = conjugate_posterior(
        example1_data.X, example1_data.Y, prior.as_conjugate(partition)
    )
    sigma2, beta = chain.posterior_mean()
    assert np.allclose(beta, posterior.mean, atol=0.05)
    assert sigma2 == pytest.approx(posterior.sigma2_mean, rel=0.05)
    assert np.allclose(chain.kept_beta.std(axis=0), posterior.beta_sd, rtol=0.1)


@pytest.mark.parametrize("restriction", [catalog.restriction1, catalog.restriction2])
def test_every_draw_is_feasible(example1_data, restriction):
    system = restriction()
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    chain = run_chain(example1_data, system, prior, iters=1500, seed=2)
    assert len(chain) == 1500
    assert chain.burn_in == 150
    assert all(check_feasible(b, system) for b in chain.beta)
    assert np.all(chain.sigma2 > 0)


def test_same_seed_same_chain(example1_data):
    system = catalog.restriction1()
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    first = run_chain(example1_data, system, prior, iters=200, seed=9)
    second = run_chain(example1_data, system, prior, iters=200, seed=9)
    other = run_chain(example1_data, system, prior, iters=200, seed=10)
    assert np.array_equal(first.draws(), second.draws())
    assert not np.array_equal(first.draws(), other.draws())


@pytest.mark.parametrize("iters", [30_000, pytest.param(100_000, marks=pytest.mark.slow)])
def test_relabeled_coefficients_give_same_posterior(example1_data, iters):
    perm = np.array([4, 2, 0, 3, 1])
    inverse = np.argsort(perm)
    system = catalog.restriction1()
    relabeled = RestrictionSystem(
        system.H[:, perm],
        system.K,
        system.G,
        tuple(int(inverse[j]) for j in system.preferred),
    )
    relabeled_data = Dataset(X=example1_data.X[:, perm], Y=example1_data.Y)

    means = []
    for data, restrictions, seed in [(example1_data, system, 21), (relabeled_data, relabeled, 22)]:
        partition = select_partition(restrictions)
        prior = PriorSpec.from_ols(data.X, data.Y, partition, a=6.0, b=2.0)
        chain = run_chain(data, restrictions, prior, iters=iters, seed=seed, partition=partition)
        assert all(check_feasible(b, restrictions) for b in chain.beta[::100])
        means.append(chain.posterior_mean())

    (sigma2, beta), (sigma2_relabeled, beta_relabeled) = means
    assert np.allclose(beta_relabeled[inverse], beta, atol=0.02)
    assert np.allclose(beta_relabeled, beta[perm], atol=0.02)
    assert sigma2_relabeled == pytest.approx(sigma2, abs=0.02)


def test_run_chain_rejects_multivariate_system(example1_data):
    system = _unbounded(1, 5, k=2)
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    with pytest.raises(ShapeMismatchError):
        run_chain(example1_data, system, prior, iters=10, partition=partition)


def test_run_chain_empty_interval(example1_data):
    good = catalog.restriction1()
    partition = select_partition(good)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    bad = RestrictionSystem(good.H, good.G, good.G, good.preferred)
    with pytest.raises(EmptyIntervalError):
        run_chain(example1_data, bad, prior, iters=10, partition=partition)


def test_run_chain_rejects_zero_sweeps(example1_data):
    system = catalog.restriction1()
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    with pytest.raises(InvalidParameterError):
        run_chain(example1_data, system, prior, iters=10, inner_sweeps=0)


# ---------------------------------------------------------------------------
# Baseline sampler
# ---------------------------------------------------------------------------


def test_baseline_agrees_with_partitioned_sampler(example1_data):
    system = catalog.restriction2()
    partition = select_partition(system)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    rng = RngStream(4)
    bks = run_chain(example1_data, system, prior, iters=6000, partition=partition, rng=rng)
    baseline = geweke_baseline_chain(
        example1_data, catalog.restriction2_square(), prior.as_conjugate(partition), 6000, rng=rng
    )
    assert baseline.method == "geweke"
    assert all(check_feasible(b, system) for b in baseline.beta[::10])
    assert np.allclose(bks.posterior_mean()[1], baseline.posterior_mean()[1], atol=0.1)


def test_baseline_rejects_non_square(example1_data):
    partition = select_partition(catalog.restriction2())
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    with pytest.raises(NotSquareError):
        geweke_baseline_chain(
            example1_data, catalog.restriction2(), prior.as_conjugate(partition), 10
        )


def test_baseline_rejects_singular(example1_data):
    partition = select_partition(catalog.restriction2())
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    H = np.eye(5)
    H[4] = H[3]
    singular = RestrictionSystem.from_bounds(H, np.full(5, np.inf))
    with pytest.raises(SingularError):
        geweke_baseline_chain(example1_data, singular, prior.as_conjugate(partition), 10)


# ---------------------------------------------------------------------------
# Multivariate sampler
# ---------------------------------------------------------------------------


def test_multivariate_draws_are_feasible():
    data = _example2_data()
    system = catalog.example2_system()
    partition = select_partition(system)
    prior = PriorSpecMV.from_ols(data.X, data.Y, partition, r=catalog.EXAMPLE2_R)
    chain = run_chain_mv(data, system, prior, iters=1000, seed=5, partition=partition)
    assert chain.beta.shape == (1000, 5, 2)
    assert all(check_feasible(B, system) for B in chain.beta)
    sigma, _ = chain.posterior_mean()
    assert np.allclose(sigma, sigma.T)
    assert chain.parameter_names()[:4] == ["sigma_11", "sigma_12", "sigma_21", "sigma_22"]


def test_unbounded_multivariate_matches_conjugate_posterior():
    data = _example2_data(seed=8)
    system = _unbounded(3, 5, k=2)
    partition = select_partition(system)
    prior = PriorSpecMV.from_ols(data.X, data.Y, partition, r=6.0)
    chain = run_chain_mv(data, system, prior, iters=5000, seed=6, partition=partition)
    posterior = conjugate_posterior_mv(data.X, data.Y, prior.as_conjugate(partition))
    sigma, B = chain.posterior_mean()
    assert np.allclose(B, posterior.mean, atol=0.05)
    assert np.allclose(sigma, posterior.sigma_mean, rtol=0.08, atol=0.02)


def test_single_response_multivariate_matches_univariate(example1_data):
    uni = catalog.restriction1()
    partition = select_partition(uni)
    prior = PriorSpec.from_ols(example1_data.X, example1_data.Y, partition, a=6.0, b=2.0)
    mv_system = RestrictionSystem(uni.H, uni.K[:, None], uni.G[:, None], uni.preferred)
    mv_prior = PriorSpecMV(
        prior.a,
        np.array([[prior.b]]),
        prior.mu_S[:, None],
        prior.mu_S_prime[:, None],
        prior.C_S,
        prior.C_S_prime,
    )
    mv_data = Dataset(X=example1_data.X, Y=example1_data.Y[:, None])
    chain = run_chain(example1_data, uni, prior, iters=6000, seed=11, partition=partition)
    chain_mv = run_chain_mv(mv_data, mv_system, mv_prior, iters=6000, seed=12, partition=partition)
    sigma2, beta = chain.posterior_mean()
    sigma, B = chain_mv.posterior_mean()
    assert np.allclose(B[:, 0], beta, atol=0.06)
    assert sigma[0, 0] == pytest.approx(sigma2, rel=0.06)


def test_run_chain_mv_rejects_vector_bounds():
    data = _example2_data()
    system = catalog.restriction1()
    partition = select_partition(system)
    prior = PriorSpecMV.from_ols(data.X, data.Y, partition, r=3.0)
    with pytest.raises(ShapeMismatchError):
        run_chain_mv(data, system, prior, iters=10, partition=partition)
