import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mgpfusion.kernels import (JITTER_CAP, CholeskyError, KernelConfig, Location,
                               as_locations, build_joint_cov, cholesky_psd, cross_cov,
                               sq_exp_kernel, validate_coregionalization)

coords = arrays(float, st.tuples(st.integers(1, 12), st.just(2)),
                elements=st.floats(-20, 20, allow_nan=False))


def test_kernel_point_values():
    cfg = KernelConfig(length_scale=2.0, theta=3.0)
    assert sq_exp_kernel([0, 0], [0, 0], cfg) == 3.0
    # distance equal to the length scale
    assert sq_exp_kernel([0, 0], [2, 0], cfg) == pytest.approx(3.0 * np.exp(-0.5), rel=1e-15)
    assert sq_exp_kernel(Location(1.0, 1.0), Location(4.0, 5.0), cfg) == pytest.approx(
        3.0 * np.exp(-25 / 8), rel=1e-15)
    assert isinstance(sq_exp_kernel([0, 0], [1, 1], cfg), float)


def test_gram_matrix_shape_and_symmetry():
    X = np.random.default_rng(0).uniform(0, 5, (7, 2))
    K = sq_exp_kernel(X, X, KernelConfig())
    assert K.shape == (7, 7)
    np.testing.assert_array_equal(K, K.T)
    np.testing.assert_array_equal(np.diag(K), 1.0)
    assert sq_exp_kernel(X, X[:3], KernelConfig()).shape == (7, 3)


@pytest.mark.parametrize("kw", [{"length_scale": 0}, {"length_scale": -1},
                                {"theta": 0}, {"theta": np.inf}, {"jitter": -1e-9}])
def test_kernel_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        KernelConfig(**kw)


def test_as_locations_validates():
    assert as_locations([1, 2]).shape == (1, 2)
    with pytest.raises(ValueError):
        as_locations([[1, 2, 3]])
    with pytest.raises(ValueError):
        as_locations([[np.nan, 0]])


@pytest.mark.parametrize("B", [[[1, 0.5], [0.4, 1]], [[1, 2], [2, 1]], [[0, 0], [0, 1]],
                               [[1, 0, 0]]])
def test_invalid_coregionalization(B):
    with pytest.raises(ValueError):
        validate_coregionalization(B)


def test_joint_cov_block_structure():
    cfg = KernelConfig(1.3, 2.0)
    xs = np.column_stack([np.linspace(0, 4, 5), np.zeros(5)])
    X = np.vstack([xs, xs])
    m = np.repeat([0, 1], 5)
    B = np.array([[1.0, 0.6], [0.6, 0.5]])
    K = build_joint_cov(X, m, B, cfg)
    k = sq_exp_kernel(xs, xs, cfg)
    expected = np.block([[B[0, 0] * k, B[0, 1] * k], [B[1, 0] * k, B[1, 1] * k]])
    np.testing.assert_allclose(K, expected, rtol=0, atol=1e-15)
    np.testing.assert_allclose(cross_cov(xs, [0] * 5, xs, [1] * 5, B, cfg), B[0, 1] * k)


def test_joint_cov_modality_mismatch():
    with pytest.raises(ValueError):
        build_joint_cov([[0, 0], [1, 0]], [0, 2], np.eye(2), KernelConfig())
    with pytest.raises(ValueError):
        build_joint_cov([[0, 0], [1, 0]], [0], np.eye(2), KernelConfig())


@given(coords, st.floats(-0.99, 0.99), st.floats(0.2, 5.0))
def test_joint_cov_is_psd(X, b12, l):
    m = np.arange(len(X)) % 2
    K = build_joint_cov(X, m, [[1.0, b12], [b12, 1.0]], KernelConfig(l, 1.0))
    np.testing.assert_array_equal(K, K.T)
    assert np.linalg.eigvalsh(K).min() >= -1e-10 * len(X)


def test_cholesky_exact_on_pd_input():
    A = np.array([[4.0, 2.0], [2.0, 3.0]])
    L, eps = cholesky_psd(A)
    assert eps == 0.0
    np.testing.assert_allclose(L @ L.T, A, atol=1e-14)


def test_cholesky_ladder_on_duplicate_points():
    X = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    K = sq_exp_kernel(X, X, KernelConfig())
    L, eps = cholesky_psd(K)
    assert 0.0 < eps <= JITTER_CAP
    np.testing.assert_allclose(L @ L.T, K + eps * np.eye(3), atol=1e-14)


def test_cholesky_gives_up_on_indefinite():
    with pytest.raises(CholeskyError):
        cholesky_psd(np.array([[1.0, 0.0], [0.0, -1.0]]))
    with pytest.raises(ValueError):
        cholesky_psd(np.array([[1.0, 0.5], [0.1, 1.0]]))


def test_identity_coregionalization_decouples():
    X = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    K = build_joint_cov(X, [0, 0, 1, 1], np.eye(2), KernelConfig())
    np.testing.assert_array_equal(K[:2, 2:], 0.0)
    assert build_joint_cov([[3.0, 4.0]], [0], [[1.0]], KernelConfig()).tolist() == [[1.0]]


def test_kernel_decays_with_distance():
    cfg = KernelConfig(0.7, 1.5)
    vals = [sq_exp_kernel([0, 0], [d, 0], cfg) for d in np.linspace(0, 10, 30)]
    assert vals[0] == 1.5 and all(a > b for a, b in zip(vals, vals[1:]))
    assert sq_exp_kernel([0, 0], [1, 0], KernelConfig()) == pytest.approx(0.6065306597126334,
                                                                          rel=1e-15)


def test_cholesky_identity_rank_one_and_random():
    L, eps = cholesky_psd(np.eye(3))
    assert eps == 0.0
    np.testing.assert_array_equal(L, np.eye(3))
    K = np.ones((2, 2))
    L, eps = cholesky_psd(K)
    assert 0 < eps <= 1e-4
    np.testing.assert_allclose(L @ L.T, K, atol=10 * eps)
    A = np.random.default_rng(4).normal(size=(5, 5))
    K = A @ A.T
    L, _ = cholesky_psd(K)
    assert np.abs(L @ L.T - K).max() < 1e-10
