"""Score functions and score vectors for linear rank statistics.

Five classical score families are provided.  Their generating functions on
(0, 1) are

* ``wilcoxon``:         phi(u) = 2u - 1
* ``psi``:              phi(u) = ln u - ln(1 - u)
* ``savage``:           phi(u) = 1 + ln u
* ``van-der-waerden``:  phi(u) = standard normal quantile at u
* ``median``:           phi(u) = sign(u - 1/2)

Score vectors come in two modes: ``exact`` scores are the expected values of
phi at the uniform order statistics, ``approximate`` scores evaluate phi at
k/(N+1).  Both are nondecreasing in k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, stats
from scipy.special import betainc, ndtri

__all__ = [
    "WILCOXON",
    "PSI",
    "SAVAGE",
    "VAN_DER_WAERDEN",
    "MEDIAN",
    "SCORE_KINDS",
    "ScoreVector",
    "phi",
    "score_vector",
    "psi_exact_scores",
    "exact_scores_from_phi",
    "raw_rank_scores",
]

WILCOXON = "wilcoxon"
PSI = "psi"
SAVAGE = "savage"
VAN_DER_WAERDEN = "van-der-waerden"
MEDIAN = "median"
SCORE_KINDS = (WILCOXON, PSI, SAVAGE, VAN_DER_WAERDEN, MEDIAN)


def phi(kind: str, u):
    """Evaluate the score-generating function of `kind` on (0, 1)."""
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0) or np.any(arr >= 1):
        raise ValueError("u must lie strictly inside (0, 1)")
    if kind == WILCOXON:
        out = 2.0 * arr - 1.0
    elif kind == PSI:
        out = np.log(arr) - np.log1p(-arr)
    elif kind == SAVAGE:
        out = 1.0 + np.log(arr)
    elif kind == VAN_DER_WAERDEN:
        out = ndtri(arr)
    elif kind == MEDIAN:
        out = np.sign(arr - 0.5)
    else:
        raise ValueError(f"unknown score kind {kind!r}; expected one of {SCORE_KINDS}")
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ScoreVector:
    """Scores a(1..N) for a linear rank statistic.

    ``values[k-1]`` is the score attached to rank ``k``.  When the scores are
    an affine function of the rank (Wilcoxon in either mode, raw rank scores),
    ``rank_affine`` gives the (intercept, slope) pair: statistics then live on
    the integer rank-sum lattice, sum a(R) = n * intercept + slope * sum(R),
    and exact nulls stay computable for large N by rank-sum counting.
    """

    values: np.ndarray
    kind: str
    mode: str

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("scores must be a vector of length at least 2")
        if np.any(np.diff(arr) < 0):
            raise ValueError("scores must be nondecreasing in the rank")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def rank_affine(self) -> tuple[float, float] | None:
        if self.kind == WILCOXON:
            return -1.0, 2.0 / (len(self) + 1.0)
        if self.kind == "rank":
            return 0.0, 1.0
        return None


def _savage_exact(n: int) -> np.ndarray:
    # a(k) = 1 - sum_{j=k}^{N} 1/j
    inv = 1.0 / np.arange(1, n + 1)
    tail = np.cumsum(inv[::-1])[::-1]
    return 1.0 - tail


def psi_exact_scores(n: int) -> np.ndarray:
    """Exact psi scores a(i) = sum_{j=0}^{i-1} 1/(N-j) - sum_{j=0}^{N-i} 1/(N-j).

    Antisymmetric: a(i) = -a(N+1-i).
    """
    if n < 2:
        raise ValueError("need N >= 2")
    inv = 1.0 / np.arange(1, n + 1)  # inv[j-1] = 1/j
    head = np.cumsum(inv[::-1])  # head[t] = sum_{j=0}^{t} 1/(N-j)
    i = np.arange(1, n + 1)
    return head[i - 1] - head[n - i]


def _vdw_exact(n: int) -> np.ndarray:
    # E[ndtri(U_{N:k})] integrated on the normal scale, where the integrand
    # decays like a Gaussian: int x * beta_pdf(Phi(x); k, N+1-k) * phi(x) dx
    out = np.empty(n)
    for k in range(1, n + 1):
        dist = stats.beta(k, n + 1 - k)

        def integrand(x, _d=dist):
            return x * _d.pdf(stats.norm.cdf(x)) * stats.norm.pdf(x)

        val, _ = integrate.quad(integrand, -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12, limit=200)
        out[k - 1] = val
    # enforce the antisymmetry the integral has analytically
    return 0.5 * (out - out[::-1])


def _median_exact(n: int) -> np.ndarray:
    # E[sign(U_{N:k} - 1/2)] = 1 - 2 * I_{1/2}(k, N+1-k)
    k = np.arange(1, n + 1)
    return 1.0 - 2.0 * betainc(k, n + 1 - k, 0.5)


def exact_scores_from_phi(fn: Callable[[float], float], n: int) -> np.ndarray:
    """Exact scores for an arbitrary score function via beta-weighted quadrature."""
    out = np.empty(n)
    for k in range(1, n + 1):
        dist = stats.beta(k, n + 1 - k)

        def integrand(u, _d=dist):
            return fn(u) * _d.pdf(u)

        val, _ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-11, epsrel=1e-11, limit=400)
        out[k - 1] = val
    return out


def score_vector(kind: str, n: int, mode: str = "exact") -> ScoreVector:
    """Build the score vector of a classical family.

    ``mode="approximate"`` evaluates phi at k/(N+1); ``mode="exact"`` uses the
    closed forms (Wilcoxon, psi, Savage, median) or quadrature (van der
    Waerden) for the expected order-statistic scores.
    """
    if n < 2:
        raise ValueError("need N >= 2")
    if mode not in ("exact", "approximate"):
        raise ValueError("mode must be 'exact' or 'approximate'")
    k = np.arange(1, n + 1)
    if mode == "approximate":
        values = phi(kind, k / (n + 1.0))
    elif kind == WILCOXON:
        values = 2.0 * k / (n + 1.0) - 1.0
    elif kind == PSI:
        values = psi_exact_scores(n)
    elif kind == SAVAGE:
        values = _savage_exact(n)
    elif kind == VAN_DER_WAERDEN:
        values = _vdw_exact(n)
    elif kind == MEDIAN:
        values = _median_exact(n)
    else:
        raise ValueError(f"unknown score kind {kind!r}; expected one of {SCORE_KINDS}")
    return ScoreVector(np.asarray(values, dtype=float), kind, mode)


def raw_rank_scores(n: int) -> ScoreVector:
    """Raw rank scores a(k) = k (the unnormalized rank-sum statistic)."""
    return ScoreVector(np.arange(1, n + 1, dtype=float), "rank", "exact")
