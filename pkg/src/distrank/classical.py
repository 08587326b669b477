"""Classical comparator tests: two-sample Hotelling T^2 and the Liu-Singh
depth rank-sum test with Mahalanobis depth.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .rng import RngSeed, as_seed

__all__ = [
    "HotellingResult",
    "hotelling_test",
    "mahalanobis_depth",
    "depth_rank_index",
    "DepthTestResult",
    "liu_singh_test",
]


@dataclass(frozen=True)
class HotellingResult:
    """Two-sample Hotelling outcome: T^2, its F-scaled form, p-value, decision."""

    t2: float
    reference_statistic: float
    p_value: float
    reject: bool
    alpha: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "scheme": "hotelling",
                "statistic": self.t2,
                "reference_statistic": self.reference_statistic,
                "p_value": self.p_value,
                "reject": self.reject,
                "alpha": self.alpha,
            }
        )


def _as_groups(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    if x.shape[1] != y.shape[1]:
        raise ValueError("groups must share the same dimension")
    return x, y


def hotelling_test(x, y, alpha: float = 0.05) -> HotellingResult:
    """Two-sample Hotelling T^2 with pooled covariance and exact F reference.

    T^2 = (mn/N) (xbar - ybar)' S_p^{-1} (xbar - ybar) with
    S_p the pooled within-group covariance; ((N-p-1)/((N-2)p)) T^2 is referred
    to F(p, N-p-1).  Requires N - 2 > p and an invertible pooled covariance.
    """
    x, y = _as_groups(x, y)
    m, n = x.shape[0], y.shape[0]
    p = x.shape[1]
    big_n = m + n
    if big_n - 2 <= p:
        raise ValueError("need m + n - 2 > dimension")
    diff = x.mean(axis=0) - y.mean(axis=0)
    xc = x - x.mean(axis=0)
    yc = y - y.mean(axis=0)
    pooled_cov = (xc.T @ xc + yc.T @ yc) / (big_n - 2)
    if np.linalg.cond(pooled_cov) > 1e12:
        raise np.linalg.LinAlgError("pooled covariance is singular")
    t2 = (m * n / big_n) * float(diff @ np.linalg.solve(pooled_cov, diff))
    f_stat = (big_n - p - 1) / ((big_n - 2) * p) * t2
    p_value = float(stats.f.sf(f_stat, p, big_n - p - 1))
    return HotellingResult(t2, f_stat, p_value, p_value <= alpha, alpha)


def mahalanobis_depth(points, reference) -> np.ndarray | float:
    """Mahalanobis depth of `points` relative to a reference sample.

    depth(y) = 1 / (1 + (y - mu)' Sigma^{-1} (y - mu)) with the sample mean
    and covariance of `reference`; equals 1 at the reference mean, decreases
    along every ray, and is invariant under affine maps applied to both
    arguments.
    """
    ref = np.atleast_2d(np.asarray(reference, dtype=float))
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[1] != ref.shape[1]:
        raise ValueError("points and reference must share the same dimension")
    mu = ref.mean(axis=0)
    cov = np.cov(ref.T, ddof=1).reshape(ref.shape[1], ref.shape[1])
    if np.linalg.cond(cov) > 1e12:
        raise np.linalg.LinAlgError("reference covariance is singular")
    centered = pts - mu
    q = np.einsum("ij,ij->i", centered, np.linalg.solve(cov, centered.T).T)
    depth = 1.0 / (1.0 + q)
    return float(depth[0]) if single else depth


def depth_rank_index(x, y) -> float:
    """Average depth rank of the second sample within the first.

    Q = (1/n) sum_j R(Y_j; X) with R(y; X) the fraction of X-points whose
    depth (relative to X) does not exceed the depth of y; concentrates
    around 1/2 when the groups share a distribution.
    """
    x, y = _as_groups(x, y)
    depth_x = mahalanobis_depth(x, x)
    depth_y = mahalanobis_depth(y, x)
    r = np.searchsorted(np.sort(depth_x), depth_y, side="right") / x.shape[0]
    return float(np.mean(r))


@dataclass(frozen=True)
class DepthTestResult:
    """Liu-Singh test outcome: the index Q, permutation p-value, decision."""

    q: float
    p_value: float
    reject: bool
    alpha: float
    permutations: int
    redraws: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "scheme": "liu-singh",
                "statistic": self.q,
                "p_value": self.p_value,
                "reject": self.reject,
                "alpha": self.alpha,
                "permutations": self.permutations,
                "redraws": self.redraws,
            }
        )


def _batch_depth_rank_index(pooled: np.ndarray, perms: np.ndarray, m: int) -> np.ndarray:
    """Q* for a batch of label permutations (rows of `perms`); NaN marks a
    replicate whose permuted reference covariance is numerically singular."""
    big_n, p = pooled.shape
    n = big_n - m
    xs = pooled[perms[:, :m]]  # (B, m, p)
    mu = xs.mean(axis=1, keepdims=True)
    xc = xs - mu
    cov = np.einsum("bij,bik->bjk", xc, xc) / (m - 1)
    dets = np.linalg.det(cov)
    ok = np.abs(dets) > 1e-300
    inv = np.empty_like(cov)
    inv[ok] = np.linalg.inv(cov[ok])
    inv[~ok] = np.eye(p)
    zc = pooled[perms] - mu  # all permuted points, centered at the X* mean
    q_forms = np.einsum("bij,bjk,bik->bi", zc, inv, zc)
    depth = 1.0 / (1.0 + q_forms)
    out = np.empty(perms.shape[0])
    for b in range(perms.shape[0]):
        dx = np.sort(depth[b, :m])
        r = np.searchsorted(dx, depth[b, m:], side="right") / m
        out[b] = r.mean()
    out[~ok] = np.nan
    return out


def liu_singh_test(
    x,
    y,
    alpha: float = 0.05,
    *,
    permutations: int = 999,
    seed: RngSeed | int | None = None,
) -> DepthTestResult:
    """Two-sided Liu-Singh depth rank-sum test, permutation calibrated.

    Rejects for large |Q - 1/2|.  Each permutation relabels the pooled sample
    and recomputes all depths against the permuted first group; a replicate
    with a singular covariance is redrawn and counted.  Requires m > p.
    """
    x, y = _as_groups(x, y)
    m, n = x.shape[0], y.shape[0]
    p = x.shape[1]
    if m <= p:
        raise ValueError("need m > dimension for the depth reference group")
    q_obs = depth_rank_index(x, y)
    observed = abs(q_obs - 0.5)

    rng = as_seed(seed).generator()
    pooled = np.vstack([x, y])
    big_n = m + n
    exceed = 0
    redraws = 0
    done = 0
    while done < permutations:
        batch = min(512, 2 * (permutations - done))
        perms = np.argsort(rng.random((batch, big_n)), axis=1)
        q_star = _batch_depth_rank_index(pooled, perms, m)
        good = q_star[np.isfinite(q_star)][: permutations - done]
        redraws += batch - int(np.count_nonzero(np.isfinite(q_star)))
        if redraws > permutations + 100:
            raise np.linalg.LinAlgError("too many singular permutation replicates")
        exceed += int(np.count_nonzero(np.abs(good - 0.5) >= observed - 1e-12))
        done += good.size
    p_value = (1 + exceed) / (permutations + 1)
    return DepthTestResult(q_obs, p_value, p_value <= alpha, alpha, permutations, redraws)
