import numpy as np
import pytest

from distrank.distances import (
    EUCLIDEAN,
    KERNELS,
    MAHALANOBIS_CENTERED,
    MAHALANOBIS_ORIGIN,
    PooledSample,
    basis_distances,
    centered_scatter,
    interpoint_distances,
    maximal_invariant,
    origin_distances,
    origin_scatter,
)


def _pooled(rows, m=None):
    rows = np.asarray(rows, dtype=float)
    m = m if m is not None else rows.shape[0] // 2
    return PooledSample(rows, m, rows.shape[0] - m)


def _random_pooled(rng, m=6, n=7, p=2):
    return PooledSample(rng.standard_normal((m + n, p)), m, n)


def test_pooled_sample_validation():
    with pytest.raises(ValueError):
        PooledSample(np.zeros((4, 2)), 3, 2)
    with pytest.raises(ValueError):
        PooledSample(np.zeros((2, 2)), 2, 0)
    with pytest.raises(ValueError):
        PooledSample.from_groups(np.zeros((2, 2)), np.zeros((2, 3)))


def test_origin_distances_euclidean():
    p = _pooled([[3.0, 4.0], [0.0, 0.0], [1.0, 0.0], [0.0, 2.0]])
    assert origin_distances(p)[0] == 5.0
    assert np.array_equal(origin_distances(_pooled(np.zeros((4, 2)))), np.zeros(4))


def test_origin_distances_mahalanobis_origin_small_oracle():
    rows = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    p = _pooled(rows, m=2)
    v0 = rows.T @ rows
    inv = np.linalg.inv(v0)  # explicit 2x2 inverse oracle
    expected = np.array([r @ inv @ r for r in rows])
    assert np.allclose(origin_distances(p, MAHALANOBIS_ORIGIN), expected, atol=1e-12)


def test_interpoint_distances_examples():
    p = _pooled([[0.0, 0.0], [3.0, 4.0], [0.0, 1.0]], m=2)
    assert np.allclose(interpoint_distances(p, 0), [5.0, 1.0])
    same = _pooled(np.ones((5, 3)), m=2)
    assert np.array_equal(interpoint_distances(same, 1), np.zeros(4))
    with pytest.raises(IndexError):
        interpoint_distances(p, 2)  # index in the second group


def test_interpoint_distances_match_brute_force():
    rng = np.random.default_rng(5)
    p = _random_pooled(rng, m=2, n=2, p=3)
    full = np.array(
        [[np.linalg.norm(a - b) for b in p.values] for a in p.values]
    )  # O(N^2) oracle
    for i in range(p.m):
        assert np.allclose(interpoint_distances(p, i), np.delete(full[i], i), atol=1e-12)


def test_basis_distances_reduces_and_matches_oracle():
    rng = np.random.default_rng(7)
    p = _random_pooled(rng, m=3, n=2, p=2)
    assert np.allclose(basis_distances(p, [1])[0], interpoint_distances(p, 1))
    mat = basis_distances(p, [0, 2])
    keep = [1, 3, 4]
    for row, b in zip(mat, [0, 2]):
        oracle = [np.linalg.norm(p.values[b] - p.values[k]) for k in keep]
        assert np.allclose(row, oracle, atol=1e-12)


def test_basis_distances_validation():
    rng = np.random.default_rng(8)
    p = _random_pooled(rng, m=3, n=4)
    with pytest.raises(ValueError):
        basis_distances(p, [0, 0])
    with pytest.raises(IndexError):
        basis_distances(p, [3])
    with pytest.raises(ValueError):
        basis_distances(p, [0, 1, 2])  # needs m > basis size


def test_kernel_symmetry():
    # d(Z0, Z1) from Z0's row equals d(Z1, Z0) from Z1's row for every kernel
    rng = np.random.default_rng(9)
    z = rng.standard_normal((8, 3))
    pooled = PooledSample(z, 3, 5)
    for kernel in KERNELS:
        a = interpoint_distances(pooled, 0, kernel)
        b = interpoint_distances(pooled, 1, kernel)
        assert a[0] == pytest.approx(b[0], rel=1e-12)


def test_euclidean_interpoint_shift_invariant_exactly():
    rng = np.random.default_rng(10)
    p = _random_pooled(rng, m=5, n=5)
    shifted = PooledSample(p.values + np.array([100.0, -3.0]), p.m, p.n)
    for i in range(p.m):
        assert np.array_equal(
            np.argsort(interpoint_distances(p, i)), np.argsort(interpoint_distances(shifted, i))
        )


def test_origin_distances_not_shift_invariant():
    rng = np.random.default_rng(11)
    p = _random_pooled(rng, m=5, n=5)
    changed = False
    for _ in range(20):
        shift = rng.standard_normal(2) * 3
        moved = PooledSample(p.values + shift, p.m, p.n)
        if not np.allclose(origin_distances(p), origin_distances(moved)):
            changed = True
            break
    assert changed


def test_mahalanobis_centered_interpoint_affine_invariant():
    rng = np.random.default_rng(12)
    p = _random_pooled(rng, m=6, n=6, p=3)
    b = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    a = rng.standard_normal(3)
    mapped = PooledSample(p.values @ b.T + a, p.m, p.n)
    for i in range(3):
        assert np.allclose(
            interpoint_distances(p, i, MAHALANOBIS_CENTERED),
            interpoint_distances(mapped, i, MAHALANOBIS_CENTERED),
            atol=1e-9,
        )


def test_mahalanobis_origin_linear_only():
    rng = np.random.default_rng(13)
    p = _random_pooled(rng, m=6, n=6, p=2)
    b = rng.standard_normal((2, 2)) + 2 * np.eye(2)
    linear = PooledSample(p.values @ b.T, p.m, p.n)
    assert np.allclose(
        origin_distances(p, MAHALANOBIS_ORIGIN),
        origin_distances(linear, MAHALANOBIS_ORIGIN),
        atol=1e-9,
    )
    shifted = PooledSample(p.values + np.array([5.0, 5.0]), p.m, p.n)
    assert not np.allclose(
        origin_distances(p, MAHALANOBIS_ORIGIN),
        origin_distances(shifted, MAHALANOBIS_ORIGIN),
        atol=1e-6,
    )


def test_maximal_invariant_projection_properties():
    rng = np.random.default_rng(14)
    p = _random_pooled(rng, m=5, n=6, p=3)
    t = maximal_invariant(p, "affine")
    assert np.allclose(t @ t, t, atol=1e-9)
    assert np.allclose(t, t.T, atol=1e-9)
    assert np.trace(t) == pytest.approx(p.dimension, abs=1e-9)


def test_maximal_invariant_invariances():
    rng = np.random.default_rng(15)
    p = _random_pooled(rng, m=5, n=6, p=2)
    b = rng.standard_normal((2, 2)) + 2 * np.eye(2)
    a = rng.standard_normal(2)
    affine = PooledSample(p.values @ b.T + a, p.m, p.n)
    assert np.allclose(maximal_invariant(p, "affine"), maximal_invariant(affine, "affine"), atol=1e-9)
    linear = PooledSample(p.values @ b.T, p.m, p.n)
    assert np.allclose(maximal_invariant(p, "linear"), maximal_invariant(linear, "linear"), atol=1e-9)
    with pytest.raises(ValueError):
        maximal_invariant(p, "rotation")


def test_singular_scatter_raises_named_error():
    # all points on a line: centered scatter is rank deficient
    rows = np.column_stack([np.arange(6.0), 2 * np.arange(6.0)])
    p = PooledSample(rows, 3, 3)
    with pytest.raises(np.linalg.LinAlgError, match="mahalanobis-centered"):
        origin_distances(p, MAHALANOBIS_CENTERED)


def test_scatter_helpers():
    rng = np.random.default_rng(16)
    z = rng.standard_normal((8, 2))
    c = z - z.mean(axis=0)
    assert np.allclose(centered_scatter(z), c.T @ c)
    assert np.allclose(origin_scatter(z), z.T @ z)
