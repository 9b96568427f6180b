"""Tests for the dense linear algebra helpers."""

import numpy as np
import pytest

from restricted_regression.core.errors import DimensionMismatchError, NotPositiveDefiniteError
from restricted_regression.numerics import (
    cholesky,
    kron,
    ols,
    residual_cross_product,
    solve_spd,
    spd_inverse,
    unvec,
    vec,
)

pytestmark = pytest.mark.unit


def test_cholesky_reconstructs(make_spd):
    m = make_spd(4)
    factor = cholesky(m)
    assert np.allclose(factor.reconstruct(), m)
    assert np.allclose(factor.lower, np.tril(factor.lower))


def test_cholesky_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_cholesky_rejects_asymmetric():
    with pytest.raises(NotPositiveDefiniteError, match="symmetric"):
        cholesky(np.array([[2.0, 1.0], [0.0, 2.0]]))


def test_cholesky_rejects_singular():
    with pytest.raises(NotPositiveDefiniteError):
        cholesky(np.ones((3, 3)))


def test_cholesky_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        cholesky(np.ones((2, 3)))


def test_solve_spd_and_inverse(make_spd):
    m = make_spd(5, seed=3)
    factor = cholesky(m)
    b = np.arange(5.0)
    assert np.allclose(m @ solve_spd(factor, b), b)
    inverse = spd_inverse(factor)
    assert np.allclose(inverse @ m, np.eye(5))
    assert np.array_equal(inverse, inverse.T)


def test_solve_spd_dimension_mismatch(make_spd):
    with pytest.raises(DimensionMismatchError):
        solve_spd(cholesky(make_spd(3)), np.ones(4))


def test_kron_block_layout():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.eye(2)
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert np.array_equal(k[2:, :2], 3.0 * b)


def test_vec_is_column_major():
    m = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    assert np.array_equal(vec(m), [1.0, 3.0, 5.0, 2.0, 4.0, 6.0])
    assert np.array_equal(unvec(vec(m), 3, 2), m)


def test_vec_kron_identity():
    # vec(A X B) = (B' kron A) vec(X)
    rng = np.random.default_rng(1)
    A, X, B = rng.standard_normal((3, 4)), rng.standard_normal((4, 2)), rng.standard_normal((2, 2))
    assert np.allclose(vec(A @ X @ B), kron(B.T, A) @ vec(X))


def test_unvec_wrong_size():
    with pytest.raises(DimensionMismatchError):
        unvec(np.ones(5), 2, 3)


def test_ols_recovers_exact_fit():
    X = np.column_stack([np.ones(6), np.arange(6.0)])
    beta = np.array([1.5, -2.0])
    assert np.allclose(ols(X, X @ beta), beta)


def test_ols_collinear_design():
    X = np.column_stack([np.ones(4), np.ones(4)])
    with pytest.raises(NotPositiveDefiniteError):
        ols(X, np.arange(4.0))


def test_residual_cross_product_is_symmetric():
    rng = np.random.default_rng(2)
    X = np.column_stack([np.ones(30), rng.standard_normal((30, 2))])
    Y = rng.standard_normal((30, 3))
    rss = residual_cross_product(X, Y)
    assert rss.shape == (3, 3)
    assert np.array_equal(rss, rss.T)
    assert np.all(np.linalg.eigvalsh(rss) > 0)
