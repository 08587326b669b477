"""Distance kernels on pooled samples and maximal invariants.

Three extraction schemes feed the rank tests: distances from the origin,
distances from a single first-group observation to everything else, and
distances from a basis of first-group observations.  Kernels:

* ``euclidean``:             L(x, y) = ||x - y||
* ``mahalanobis-origin``:    L(x, y) = (x-y)' inv(V0) (x-y),  V0 = sum z z'
* ``mahalanobis-centered``:  L(x, y) = (x-y)' inv(V)  (x-y),  V  = centered scatter

The Mahalanobis kernels keep the quadratic form (no square root); any
monotone transformation leaves the ranks, and hence the tests, unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "EUCLIDEAN",
    "MAHALANOBIS_ORIGIN",
    "MAHALANOBIS_CENTERED",
    "KERNELS",
    "PooledSample",
    "origin_distances",
    "interpoint_distances",
    "basis_distances",
    "maximal_invariant",
    "centered_scatter",
    "origin_scatter",
]

EUCLIDEAN = "euclidean"
MAHALANOBIS_ORIGIN = "mahalanobis-origin"
MAHALANOBIS_CENTERED = "mahalanobis-centered"
KERNELS = (EUCLIDEAN, MAHALANOBIS_ORIGIN, MAHALANOBIS_CENTERED)

# beyond this condition number a scatter matrix is treated as singular;
# rank exchangeability arguments assume a proper inverse, so no pseudo-inverse
_MAX_CONDITION = 1e12


@dataclass(frozen=True)
class PooledSample:
    """The pooled two-sample data: first ``m`` rows are X's, last ``n`` are Y's."""

    values: np.ndarray
    m: int
    n: int

    def __post_init__(self) -> None:
        arr = np.atleast_2d(np.asarray(self.values, dtype=float))
        object.__setattr__(self, "values", arr)
        if self.m < 1 or self.n < 1:
            raise ValueError("group sizes must be at least 1")
        if arr.shape[0] != self.m + self.n:
            raise ValueError("row count must equal m + n")

    @classmethod
    def from_groups(cls, x: np.ndarray, y: np.ndarray) -> "PooledSample":
        x = np.atleast_2d(np.asarray(x, dtype=float))
        y = np.atleast_2d(np.asarray(y, dtype=float))
        if x.shape[1] != y.shape[1]:
            raise ValueError("groups must share the same dimension")
        return cls(np.vstack([x, y]), x.shape[0], y.shape[0])

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    @property
    def x(self) -> np.ndarray:
        return self.values[: self.m]

    @property
    def y(self) -> np.ndarray:
        return self.values[self.m :]


def centered_scatter(z: np.ndarray) -> np.ndarray:
    """Scatter matrix of the rows about their mean (no 1/(N-1) scaling)."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    c = z - z.mean(axis=0)
    return c.T @ c


def origin_scatter(z: np.ndarray) -> np.ndarray:
    """Scatter matrix of the rows about the origin."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    return z.T @ z


def _inverse_scatter(matrix: np.ndarray, what: str) -> np.ndarray:
    if np.linalg.cond(matrix) > _MAX_CONDITION:
        raise np.linalg.LinAlgError(f"{what} scatter matrix is singular or near-singular")
    return np.linalg.inv(matrix)


def _kernel_inverse(pooled: PooledSample, kernel: str) -> np.ndarray | None:
    if kernel == EUCLIDEAN:
        return None
    if kernel == MAHALANOBIS_ORIGIN:
        return _inverse_scatter(origin_scatter(pooled.values), "mahalanobis-origin")
    if kernel == MAHALANOBIS_CENTERED:
        return _inverse_scatter(centered_scatter(pooled.values), "mahalanobis-centered")
    raise ValueError(f"unknown kernel {kernel!r}; expected one of {KERNELS}")


def _distances_from(point: np.ndarray, targets: np.ndarray, inv: np.ndarray | None) -> np.ndarray:
    diff = targets - point
    if inv is None:
        return np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return np.einsum("ij,jk,ik->i", diff, inv, diff)


def origin_distances(pooled: PooledSample, kernel: str = EUCLIDEAN) -> np.ndarray:
    """Distances of every pooled observation from the origin (length N)."""
    inv = _kernel_inverse(pooled, kernel)
    return _distances_from(np.zeros(pooled.dimension), pooled.values, inv)


def interpoint_distances(pooled: PooledSample, i: int, kernel: str = EUCLIDEAN) -> np.ndarray:
    """Distances from first-group observation ``i`` to every other observation.

    ``i`` is a 0-based index into the first group.  Output has length N - 1
    with the entry for observation ``i`` omitted and the remaining order
    preserved.
    """
    if not 0 <= i < pooled.m:
        raise IndexError(f"index {i} outside the first group (m={pooled.m})")
    inv = _kernel_inverse(pooled, kernel)
    d = _distances_from(pooled.values[i], pooled.values, inv)
    return np.delete(d, i)


def basis_distances(
    pooled: PooledSample, basis: Sequence[int], kernel: str = EUCLIDEAN
) -> np.ndarray:
    """Distance matrix from a first-group basis to the remaining observations.

    Row ``j`` holds distances from basis point ``basis[j]`` (0-based, within
    the first group) to all observations outside the basis, columns in
    original pooled order and consistent across rows.  Requires m > len(basis).
    """
    basis = list(basis)
    if len(set(basis)) != len(basis):
        raise ValueError("basis indices must be distinct")
    if any(not 0 <= b < pooled.m for b in basis):
        raise IndexError("basis indices must lie in the first group")
    if pooled.m <= len(basis):
        raise ValueError("need m > basis size to leave first-group observations")
    inv = _kernel_inverse(pooled, kernel)
    keep = np.setdiff1d(np.arange(pooled.size), basis)
    targets = pooled.values[keep]
    rows = [_distances_from(pooled.values[b], targets, inv) for b in basis]
    return np.vstack(rows)


def maximal_invariant(pooled: PooledSample, group: str = "affine") -> np.ndarray:
    """Maximal invariant matrix for the affine or linear transformation group.

    ``"affine"`` (maps z -> a + B z): the N x N matrix of centered quadratic
    forms, which is the projection matrix onto the span of the centered data.
    ``"linear"`` (maps z -> B z): the same built on raw coordinates and the
    origin scatter.
    """
    z = pooled.values
    if group == "affine":
        c = z - z.mean(axis=0)
        inv = _inverse_scatter(centered_scatter(z), "affine-invariant")
        return c @ inv @ c.T
    if group == "linear":
        inv = _inverse_scatter(origin_scatter(z), "linear-invariant")
        return z @ inv @ z.T
    raise ValueError("group must be 'affine' or 'linear'")
