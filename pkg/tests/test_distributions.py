"""Tests for the random samplers."""

import math

import numpy as np
import pytest
from scipy import stats

from restricted_regression.core.errors import (
    DimensionMismatchError,
    EmptyIntervalError,
    InfeasibleStartError,
    InvalidDegreesOfFreedomError,
    InvalidParameterError,
    SingularTransformError,
)
from restricted_regression.distributions import (
    BoxBounds,
    InverseWishart,
    RngStream,
    sample_inverse_gamma,
    sample_inverse_wishart,
    sample_matrix_normal,
    sample_mvn,
    sample_mvn_under_linear_box,
    sample_tmvn_box,
    sample_truncnorm,
)
from restricted_regression.numerics import cholesky, vec

pytestmark = pytest.mark.unit


# ---------------------------------------------------------------------------
# Streams and boxes
# ---------------------------------------------------------------------------


def test_rng_stream_is_reproducible():
    a = RngStream(99).generator.standard_normal(5)
    b = RngStream(99).generator.standard_normal(5)
    assert np.array_equal(a, b)


def test_rng_spawn_offsets_seed():
    child = RngStream(10).spawn(3)
    assert child.seed == 13
    assert np.array_equal(child.generator.random(3), RngStream(13).generator.random(3))


def test_rng_rejects_negative_seed():
    with pytest.raises(InvalidParameterError):
        RngStream(-1)


def test_box_rejects_empty_interval():
    with pytest.raises(EmptyIntervalError, match="coordinate 1"):
        BoxBounds(np.array([0.0, 2.0]), np.array([1.0, 2.0]))


def test_box_interior_point_and_repair():
    box = BoxBounds(np.array([-np.inf, 1.0, 0.0, -np.inf]), np.array([3.0, np.inf, 2.0, np.inf]))
    point = box.interior_point()
    assert np.array_equal(point, [2.0, 2.0, 1.0, 0.0])
    assert box.contains(point, strict=True)
    repaired = box.repair([5.0, 1.5, 1.0, 7.0])
    assert np.array_equal(repaired, [2.0, 1.5, 1.0, 7.0])


# ---------------------------------------------------------------------------
# Univariate truncated normal
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("lo", "hi"),
    [(-1.0, 2.0), (0.5, math.inf), (-math.inf, -1.5), (2.0, 2.5)],
)
def test_truncnorm_matches_reference_distribution(lo, hi):
    rng = RngStream(2024)
    mu, sigma = 0.3, 1.2
    draws = np.array([sample_truncnorm(mu, sigma, lo, hi, rng) for _ in range(4000)])
    assert np.all((draws > lo) & (draws < hi))
    a, b = (lo - mu) / sigma, (hi - mu) / sigma
    result = stats.kstest(draws, stats.truncnorm(a, b, loc=mu, scale=sigma).cdf)
    assert result.pvalue > 1e-3


@pytest.mark.parametrize(("lo", "hi"), [(8.0, math.inf), (10.0, 10.001), (-math.inf, -9.0)])
def test_truncnorm_far_tails_stay_inside(lo, hi):
    rng = RngStream(5)
    draws = np.array([sample_truncnorm(0.0, 1.0, lo, hi, rng) for _ in range(2000)])
    assert np.all((draws > lo) & (draws < hi))
    reference = stats.truncnorm(lo, hi).mean()
    assert abs(draws.mean() - reference) < 0.02


def test_truncnorm_empty_interval():
    with pytest.raises(EmptyIntervalError):
        sample_truncnorm(0.0, 1.0, 1.0, 1.0, RngStream(0))


def test_truncnorm_rejects_bad_sigma():
    with pytest.raises(InvalidParameterError):
        sample_truncnorm(0.0, 0.0, -1.0, 1.0, RngStream(0))


# ---------------------------------------------------------------------------
# Conjugate samplers
# ---------------------------------------------------------------------------


def test_inverse_gamma_mean():
    rng = RngStream(1)
    draws = np.array([sample_inverse_gamma(5.0, 8.0, rng) for _ in range(20000)])
    assert np.all(draws > 0)
    assert draws.mean() == pytest.approx(2.0, abs=0.05)


@pytest.mark.parametrize(("shape", "rate"), [(0.0, 1.0), (1.0, -2.0), (math.inf, 1.0)])
def test_inverse_gamma_rejects_bad_parameters(shape, rate):
    with pytest.raises(InvalidParameterError):
        sample_inverse_gamma(shape, rate, RngStream(0))


def test_mvn_covariance(make_spd):
    cov = make_spd(3, seed=4)
    factor = cholesky(cov)
    rng = RngStream(3)
    draws = np.array([sample_mvn(np.zeros(3), factor, rng) for _ in range(20000)])
    assert np.allclose(np.cov(draws.T), cov, rtol=0.05, atol=0.1)


def test_mvn_dimension_mismatch(make_spd):
    with pytest.raises(DimensionMismatchError):
        sample_mvn(np.zeros(2), cholesky(make_spd(3)), RngStream(0))


def test_inverse_wishart_mean():
    scale = np.array([[2.0, 0.5], [0.5, 1.0]])
    dist = InverseWishart(10.0, scale)
    rng = RngStream(8)
    draws = np.array([dist.draw(rng) for _ in range(8000)])
    assert np.allclose(draws.mean(axis=0), scale / 7.0, atol=0.02)
    assert all(np.all(np.linalg.eigvalsh(d) > 0) for d in draws[:50])


def test_inverse_wishart_rejects_low_df():
    with pytest.raises(InvalidDegreesOfFreedomError):
        sample_inverse_wishart(1.0, np.eye(3), RngStream(0))


def test_matrix_normal_covariance():
    Sigma = np.array([[1.0, 0.4], [0.4, 2.0]])
    D = np.array([[1.0, -0.3, 0.0], [-0.3, 0.5, 0.1], [0.0, 0.1, 0.8]])
    M = np.arange(6.0).reshape(3, 2)
    rng = RngStream(11)
    draws = np.array([vec(sample_matrix_normal(M, Sigma, D, rng)) for _ in range(20000)])
    assert np.allclose(draws.mean(axis=0), vec(M), atol=0.05)
    assert np.allclose(np.cov(draws.T), np.kron(Sigma, D), atol=0.08)


# ---------------------------------------------------------------------------
# Box-truncated multivariate normal
# ---------------------------------------------------------------------------


def _rejection_mean(mean, cov, inside, size=400_000):
    draws = np.random.default_rng(0).multivariate_normal(mean, cov, size=size)
    kept = draws[inside(draws)]
    return kept.mean(axis=0)


def test_tmvn_box_matches_rejection():
    mean = np.array([0.2, -0.1])
    cov = np.array([[1.0, 0.6], [0.6, 1.5]])
    box = BoxBounds(np.array([-np.inf, -0.3]), np.array([0.5, np.inf]))
    rng = RngStream(21)
    x = box.interior_point()
    draws = np.empty((20000, 2))
    for t in range(draws.shape[0]):
        x = sample_tmvn_box(mean, cov, box, x, 1, rng)
        draws[t] = x
    assert all(box.contains(d, strict=True) for d in draws[::97])
    reference = _rejection_mean(
        mean, cov, lambda d: (d[:, 0] < 0.5) & (d[:, 1] > -0.3)
    )
    assert np.allclose(draws[1000:].mean(axis=0), reference, atol=0.05)


def test_tmvn_box_rejects_outside_start():
    box = BoxBounds(np.array([0.0]), np.array([1.0]))
    with pytest.raises(InfeasibleStartError):
        sample_tmvn_box([0.0], [[1.0]], box, [2.0], 1, RngStream(0))


def test_tmvn_box_rejects_zero_sweeps():
    box = BoxBounds.unbounded(1)
    with pytest.raises(InvalidParameterError):
        sample_tmvn_box([0.0], [[1.0]], box, [0.0], 0, RngStream(0))


def test_linear_box_respects_restrictions():
    A = np.array([[1.0, 1.0], [0.0, 1.0]])
    box = BoxBounds(np.array([-np.inf, 0.0]), np.array([0.5, np.inf]))
    rng = RngStream(4)
    x = np.array([0.0, 0.25])
    for _ in range(500):
        x = sample_mvn_under_linear_box([1.0, 1.0], np.eye(2), A, box, x, 2, rng)
        theta = A @ x
        assert theta[0] <= 0.5
        assert theta[1] >= 0.0


def test_linear_box_singular_transform():
    box = BoxBounds.unbounded(2)
    with pytest.raises(SingularTransformError):
        sample_mvn_under_linear_box(
            [0.0, 0.0], np.eye(2), np.ones((2, 2)), box, [0.0, 0.0], 1, RngStream(0)
        )
