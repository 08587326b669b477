"""Linear rank statistics, permutation nulls, and the distance rank tests.

The constructions share one convention: the statistic is the (scaled) sum of
scores over the second group's ranks, large values reject.  Statistic sums are
always taken over scores sorted in ascending rank order, and exact nulls use
the same summation, so a data statistic matches its null-support atom exactly
in floating point; randomized critical values (C, gamma) therefore attain the
prescribed size exactly, not only up to rounding.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .distances import EUCLIDEAN, PooledSample, basis_distances, interpoint_distances, origin_distances
from .rng import RngSeed, as_seed
from .scores import ScoreVector, score_vector

__all__ = [
    "ranks",
    "linear_rank_statistic",
    "centered_statistic",
    "NullDistribution",
    "RankSumLattice",
    "null_distribution",
    "RandomizedCriticalValue",
    "randomized_critical_value",
    "rejection_probability",
    "TwoSidedCriticalValues",
    "two_sided_critical_values",
    "RankTestResult",
    "simple_rank_test",
    "conditional_rank_test",
    "randomized_rank_test",
    "ks_two_sample",
    "SUBSET_CAP",
]

SUBSET_CAP = 10_000_000


# ---------------------------------------------------------------------------
# ranks and statistics


def ranks(values, rng: np.random.Generator | RngSeed | int | None = None) -> np.ndarray:
    """Ranks 1..N of `values`, exact ties broken uniformly at random.

    Random tie-breaking keeps the rank vector uniform over permutations even
    on tied inputs, which midranks would not; the tie stream is part of a
    test's seed trail.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValueError("need a vector of at least two values")
    if not isinstance(rng, np.random.Generator):
        rng = as_seed(rng).generator()
    tiebreak = rng.random(v.size)
    order = np.lexsort((tiebreak, v))
    out = np.empty(v.size, dtype=np.int64)
    out[order] = np.arange(1, v.size + 1)
    return out


def _check_rank_vector(rank_vector: np.ndarray, scores: ScoreVector, m: int) -> np.ndarray:
    r = np.asarray(rank_vector)
    if r.size != len(scores):
        raise ValueError("rank vector and score vector lengths differ")
    if not 1 <= m < r.size:
        raise ValueError("need 1 <= m < N")
    return r


def _sum_scores(scores: ScoreVector, rank_subset: np.ndarray) -> float:
    # canonical ascending-rank order; scores are nondecreasing, so this is
    # also ascending-value order and reproduces enumeration sums bitwise
    return float(np.sum(scores.values[np.sort(rank_subset) - 1]))


def linear_rank_statistic(
    rank_vector, m: int, scores: ScoreVector, scale: float | None = None
) -> float:
    """Scaled sum of scores over the second group's ranks.

    ``rank_vector`` holds the pooled ranks with the first ``m`` entries
    belonging to the first group.  ``scale`` defaults to N**-0.5 with N the
    pooled size.
    """
    r = _check_rank_vector(rank_vector, scores, m)
    if scale is None:
        scale = 1.0 / math.sqrt(r.size)
    return scale * _sum_scores(scores, r[m:])


def centered_statistic(
    rank_vector, m: int, scores: ScoreVector, scale: float | None = None
) -> float:
    """Centered variant: scale * [-(n/N) sum_first a(R) + (m/N) sum_second a(R)].

    Coincides with :func:`linear_rank_statistic` whenever the scores sum to
    zero over 1..N.
    """
    r = _check_rank_vector(rank_vector, scores, m)
    big_n = r.size
    n = big_n - m
    if scale is None:
        scale = 1.0 / math.sqrt(big_n)
    first = _sum_scores(scores, r[:m])
    second = _sum_scores(scores, r[m:])
    return scale * (-(n / big_n) * first + (m / big_n) * second)


# ---------------------------------------------------------------------------
# null distributions


@dataclass(frozen=True)
class RankSumLattice:
    """Integer rank-sum representation behind a rank-affine null.

    For scores a(k) = intercept + slope * k, a statistic with second-group
    rank sum W equals ``scale * (n * intercept + slope * W)``; computing both
    data statistics and support atoms through :meth:`value` makes their float
    representations identical.
    """

    w_min: int
    w_max: int
    n_second: int
    intercept: float
    slope: float
    scale: float

    def value(self, rank_sum):
        w = np.asarray(rank_sum, dtype=float)
        out = self.scale * (self.n_second * self.intercept + self.slope * w)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class NullDistribution:
    """Discrete null law of a rank statistic: sorted support plus masses."""

    support: np.ndarray
    probs: np.ndarray
    mode: str
    lattice: RankSumLattice | None = None

    def __post_init__(self) -> None:
        s = np.asarray(self.support, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        if s.ndim != 1 or s.shape != p.shape or s.size == 0:
            raise ValueError("support and probs must be matching nonempty vectors")
        if np.any(np.diff(s) <= 0):
            raise ValueError("support must be strictly increasing")
        if np.any(p <= 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be positive and sum to 1")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "probs", p)
        # upper[i] = P(S >= support[i]); summed from the smallest masses up
        upper = np.cumsum(p[::-1])[::-1]
        object.__setattr__(self, "_upper", upper)

    def prob_above(self, s: float) -> float:
        """P(S > s)."""
        idx = np.searchsorted(self.support, s, side="right")
        return float(self._upper[idx]) if idx < self.support.size else 0.0

    def prob_at_or_above(self, s: float) -> float:
        """P(S >= s)."""
        idx = np.searchsorted(self.support, s, side="left")
        return float(self._upper[idx]) if idx < self.support.size else 0.0

    def prob_at(self, s: float) -> float:
        """P(S = s), zero off the support."""
        idx = np.searchsorted(self.support, s, side="left")
        if idx < self.support.size and self.support[idx] == s:
            return float(self.probs[idx])
        return 0.0

    def mean(self) -> float:
        return float(np.sum(self.support * self.probs))


@lru_cache(maxsize=16)
def _ranksum_counts(big_n: int, size: int) -> tuple[int, np.ndarray]:
    """Counts of `size`-subsets of {1..big_n} by their sum.

    Returns ``(w_min, counts)`` where ``counts[i]`` is the number of subsets
    summing to ``w_min + i``.  Counts are float64; they are exact integers up
    to 2**53 and carry ~1e-15 relative error beyond, which is far below any
    tolerance used on the resulting probabilities.
    """
    w_min = size * (size + 1) // 2
    w_max = size * (2 * big_n - size + 1) // 2
    width = w_max - w_min
    if (size + 1) * (width + 1) > 300_000_000:
        raise ValueError("rank-sum null too large to count; use a monte-carlo null")
    # f[j, w] = number of j-subsets of the ranks processed so far with sum w
    f = np.zeros((size + 1, w_max + 1))
    f[0, 0] = 1.0
    for k in range(1, big_n + 1):
        for j in range(size, 0, -1):
            f[j, k:] += f[j - 1, : -k or None]
    return w_min, f[size, w_min:]


def _ranksum_null(m: int, n: int, scores: ScoreVector, scale: float) -> NullDistribution:
    intercept, slope = scores.rank_affine
    big_n = m + n
    total = big_n * (big_n + 1) // 2
    if n <= m:
        w_min, counts = _ranksum_counts(big_n, n)
    else:
        # count the smaller group's sums and reflect: W_second = total - W_first
        w_min_first, counts_first = _ranksum_counts(big_n, m)
        counts = counts_first[::-1]
        w_min = total - (w_min_first + counts_first.size - 1)
    lattice = RankSumLattice(
        w_min=w_min,
        w_max=w_min + counts.size - 1,
        n_second=n,
        intercept=intercept,
        slope=slope,
        scale=scale,
    )
    support = lattice.value(np.arange(lattice.w_min, lattice.w_max + 1))
    return NullDistribution(support, counts / counts.sum(), "exact-count", lattice)


def _collapse(values: np.ndarray, weights_total: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    support, counts = np.unique(values, return_counts=True)
    total = weights_total if weights_total is not None else values.size
    return support, counts / total


def _enumerated_statistics(big_n: int, n: int, scores: ScoreVector, scale: float) -> np.ndarray:
    n_subsets = math.comb(big_n, n)
    values = np.empty(n_subsets)
    block = 100_000
    it = itertools.combinations(range(big_n), n)
    pos = 0
    while True:
        chunk = list(itertools.islice(it, block))
        if not chunk:
            break
        idx = np.asarray(chunk, dtype=np.int64)
        values[pos : pos + idx.shape[0]] = scale * np.sum(scores.values[idx], axis=1)
        pos += idx.shape[0]
    return values


def random_rank_subsets(rng: np.random.Generator, draws: int, big_n: int, n: int) -> np.ndarray:
    """`draws` uniformly random n-subsets of ranks 1..big_n, one per row."""
    out = np.empty((draws, n), dtype=np.int64)
    block = max(1, min(draws, 20_000_000 // max(big_n, 1)))
    for start in range(0, draws, block):
        stop = min(start + block, draws)
        u = rng.random((stop - start, big_n))
        out[start:stop] = np.argpartition(u, n - 1, axis=1)[:, :n] + 1
    return out


def null_distribution(
    m: int,
    n: int,
    scores: ScoreVector,
    mode: str = "auto",
    *,
    seed: RngSeed | int | None = None,
    draws: int = 100_000,
    scale: float | None = None,
    subset_cap: int = SUBSET_CAP,
) -> NullDistribution:
    """Permutation null of the linear rank statistic for group sizes (m, n).

    Under the hypothesis the rank vector is uniform over permutations, so the
    null is the distribution of the scaled score sum over a uniformly random
    n-subset of ranks.  Modes:

    * ``"exact"``: full subset enumeration, allowed while C(N, n) <= subset_cap;
      rank-affine scores are instead counted exactly over the rank-sum lattice
      with no cap.
    * ``"monte-carlo"``: `draws` random subsets.
    * ``"auto"``: exact when available, otherwise monte-carlo.
    """
    big_n = m + n
    if big_n != len(scores):
        raise ValueError("scores length must equal m + n")
    if m < 1 or n < 1:
        raise ValueError("group sizes must be at least 1")
    if scale is None:
        scale = 1.0 / math.sqrt(big_n)
    if mode not in ("auto", "exact", "monte-carlo"):
        raise ValueError("mode must be 'auto', 'exact' or 'monte-carlo'")

    if mode in ("auto", "exact") and scores.rank_affine is not None:
        return _ranksum_null(m, n, scores, scale)
    feasible = math.comb(big_n, n) <= subset_cap
    if mode == "exact" and not feasible:
        raise ValueError(f"exact enumeration needs C({big_n},{n}) <= {subset_cap}")
    if mode == "auto":
        mode = "exact" if feasible else "monte-carlo"

    if mode == "exact":
        values = _enumerated_statistics(big_n, n, scores, scale)
        support, probs = _collapse(values)
        return NullDistribution(support, probs, "exact-enumeration")

    rng = as_seed(seed).generator()
    subsets = random_rank_subsets(rng, draws, big_n, n)
    if scores.rank_affine is not None:
        # keep the integer rank-sum representation so support atoms coincide
        # bitwise with lattice-mapped statistics
        intercept, slope = scores.rank_affine
        w = np.sum(subsets, axis=1)
        w_support, counts = np.unique(w, return_counts=True)
        lattice = RankSumLattice(
            w_min=int(w_support[0]),
            w_max=int(w_support[-1]),
            n_second=n,
            intercept=intercept,
            slope=slope,
            scale=scale,
        )
        support = lattice.value(w_support)
        # the sampled support may have gaps, so the stored lattice serves only
        # as the value map; probabilities follow the sampled atoms
        return NullDistribution(support, counts / w.size, "monte-carlo", lattice)
    values = scale * np.sum(np.sort(scores.values[subsets - 1], axis=1), axis=1)
    support, probs = _collapse(values)
    return NullDistribution(support, probs, "monte-carlo")


# ---------------------------------------------------------------------------
# randomized critical values and decisions


@dataclass(frozen=True)
class RandomizedCriticalValue:
    """Critical value C and atom weight gamma with P(S > C) + gamma P(S = C) = alpha."""

    c_alpha: float
    gamma: float
    alpha: float


def randomized_critical_value(null: NullDistribution, alpha: float) -> RandomizedCriticalValue:
    """Smallest support point C with P(S > C) <= alpha, and the matching gamma.

    gamma = (alpha - P(S > C)) / P(S = C); it is 0 when the tail probability
    hits alpha exactly, and equals alpha on a degenerate single-atom null.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    upper = null._upper  # P(S >= support[k])
    k_size = null.support.size
    above = np.empty(k_size)
    above[:-1] = upper[1:]
    above[-1] = 0.0  # P(S > max support)
    k = int(np.searchsorted(-above, -alpha, side="left"))
    # `above` is nonincreasing; k is the first index with above[k] <= alpha
    gamma = (alpha - above[k]) / null.probs[k]
    return RandomizedCriticalValue(float(null.support[k]), float(gamma), alpha)


def rejection_probability(statistic: float, critical: RandomizedCriticalValue) -> float:
    """The randomized test's rejection probability at an observed statistic."""
    if statistic > critical.c_alpha:
        return 1.0
    if statistic == critical.c_alpha:
        return critical.gamma
    return 0.0


@dataclass(frozen=True)
class TwoSidedCriticalValues:
    """Two-sided critical region: reject outside (lower, upper), with atom
    weights gamma_lower/gamma_upper making each tail's size exactly alpha/2."""

    lower: float
    upper: float
    gamma_lower: float
    gamma_upper: float
    alpha: float


def two_sided_critical_values(null: NullDistribution, alpha: float) -> TwoSidedCriticalValues:
    """Equal-tailed two-sided critical values on a discrete null.

    The upper pair satisfies P(S > upper) + g_u P(S = upper) = alpha/2, the
    lower pair P(S < lower) + g_l P(S = lower) = alpha/2.  The conservative
    (non-randomized) version of the test rejects only strictly outside the
    atoms, which for rank statistics coincides with doubling the exact
    one-sided p-value.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    up = randomized_critical_value(null, alpha / 2.0)
    below = 1.0 - null._upper  # P(S < support[k]), nondecreasing with below[0] = 0
    k = int(np.searchsorted(below, alpha / 2.0, side="right")) - 1
    gamma_lower = (alpha / 2.0 - below[k]) / null.probs[k]
    return TwoSidedCriticalValues(
        lower=float(null.support[k]),
        upper=up.c_alpha,
        gamma_lower=float(gamma_lower),
        gamma_upper=up.gamma,
        alpha=alpha,
    )


def _resolve(decision: float, rng: np.random.Generator) -> bool:
    if decision >= 1.0:
        return True
    if decision <= 0.0:
        return False
    return bool(rng.random() < decision)


# ---------------------------------------------------------------------------
# test results and the three schemes


@dataclass(frozen=True)
class RankTestResult:
    """Outcome of one two-sample test.

    ``decision`` is the randomized rejection probability (0, gamma or 1);
    ``reject`` resolves it with the seeded stream.  ``p_value`` is the
    upper-tail probability P0(S >= s); the randomized schemes report the
    mixture p-value averaged over their candidate statistics.
    """

    scheme: str
    statistic: float
    alpha: float
    c_alpha: float | None
    gamma: float | None
    decision: float
    reject: bool
    p_value: float
    null_mode: str | None
    seed: RngSeed | None
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "scheme": self.scheme,
            "statistic": self.statistic,
            "C_alpha": self.c_alpha,
            "gamma": self.gamma,
            "alpha": self.alpha,
            "decision": self.decision,
            "reject": self.reject,
            "p_value": self.p_value,
            "null_mode": self.null_mode,
            "seeds": None
            if self.seed is None
            else {"seed": self.seed.seed, "stream": self.seed.stream},
            "details": {k: v for k, v in self.details.items()},
        }
        return json.dumps(payload)


def _statistic_for(
    null: NullDistribution, scores: ScoreVector, rank_vector: np.ndarray, m: int, scale: float
) -> float:
    if null.lattice is not None:
        w = int(np.sum(rank_vector[m:], dtype=np.int64))
        return float(null.lattice.value(w))
    return scale * _sum_scores(scores, rank_vector[m:])


def _build_null(m, n, scores, mode, seed, draws, scale):
    return null_distribution(m, n, scores, mode, seed=seed, draws=draws, scale=scale)


def simple_rank_test(
    pooled: PooledSample,
    kernel: str = EUCLIDEAN,
    score: str = "wilcoxon",
    alpha: float = 0.05,
    *,
    mode: str = "auto",
    score_mode: str = "exact",
    seed: RngSeed | int | None = None,
    draws: int = 100_000,
) -> RankTestResult:
    """Rank test on the distances of all pooled observations from the origin.

    Not invariant under shifts of the data; rejects when the second group's
    origin distances rank high.
    """
    root = as_seed(seed)
    g_data = root.generator(0)
    big_n, m, n = pooled.size, pooled.m, pooled.n
    scale = 1.0 / math.sqrt(big_n)
    sc = score_vector(score, big_n, score_mode)
    null = _build_null(m, n, sc, mode, root.substream(1), draws, scale)
    rv = ranks(origin_distances(pooled, kernel), g_data)
    s = _statistic_for(null, sc, rv, m, scale)
    crit = randomized_critical_value(null, alpha)
    decision = rejection_probability(s, crit)
    return RankTestResult(
        scheme="simple",
        statistic=s,
        alpha=alpha,
        c_alpha=crit.c_alpha,
        gamma=crit.gamma,
        decision=decision,
        reject=_resolve(decision, g_data),
        p_value=null.prob_at_or_above(s),
        null_mode=null.mode,
        seed=root,
        details={"kernel": kernel, "score": score},
    )


def conditional_rank_test(
    pooled: PooledSample,
    basis,
    kernel: str = EUCLIDEAN,
    score: str = "wilcoxon",
    alpha: float = 0.05,
    *,
    mode: str = "auto",
    score_mode: str = "exact",
    seed: RngSeed | int | None = None,
    draws: int = 100_000,
) -> RankTestResult:
    """Conditional rank test on distances from a first-group basis.

    One of the per-basis-point statistics is selected uniformly at random
    (independently of the data); the null is the two-sample permutation law
    with group sizes (m - p, n).  Shift invariant with the euclidean kernel.
    """
    basis = list(basis)
    p = len(basis)
    root = as_seed(seed)
    g_data = root.generator(0)
    big_n, m, n = pooled.size, pooled.m, pooled.n
    if m <= p:
        raise ValueError("need m > basis size")
    # the selector is drawn before the data are examined
    j_drawn = int(g_data.integers(p))
    scale = 1.0 / math.sqrt(big_n)
    sc = score_vector(score, big_n - p, score_mode)
    null = _build_null(m - p, n, sc, mode, root.substream(1), draws, scale)
    dist = basis_distances(pooled, basis, kernel)
    stats = np.array(
        [_statistic_for(null, sc, ranks(row, g_data), m - p, scale) for row in dist]
    )
    s = float(stats[j_drawn])
    crit = randomized_critical_value(null, alpha)
    decision = rejection_probability(s, crit)
    p_value = float(np.mean([null.prob_at_or_above(v) for v in stats]))
    return RankTestResult(
        scheme="conditional",
        statistic=s,
        alpha=alpha,
        c_alpha=crit.c_alpha,
        gamma=crit.gamma,
        decision=decision,
        reject=_resolve(decision, g_data),
        p_value=p_value,
        null_mode=null.mode,
        seed=root,
        details={"kernel": kernel, "score": score, "basis": basis, "drawn": j_drawn},
    )


def randomized_rank_test(
    pooled: PooledSample,
    kernel: str = EUCLIDEAN,
    score: str = "wilcoxon",
    alpha: float = 0.05,
    *,
    mode: str = "auto",
    score_mode: str = "exact",
    seed: RngSeed | int | None = None,
    draws: int = 100_000,
) -> RankTestResult:
    """Randomized interpoint-distance rank test.

    A first-group observation i is drawn uniformly (independently of the
    data); the test ranks the distances from X_i to the other N - 1
    observations and refers the score sum over the second group to the
    (m - 1, n) permutation null.  Shift invariant with the euclidean kernel.
    The reported p-value is the mixture average over all m candidates.
    """
    root = as_seed(seed)
    g_data = root.generator(0)
    big_n, m, n = pooled.size, pooled.m, pooled.n
    i_drawn = int(g_data.integers(m))
    scale = 1.0 / math.sqrt(big_n)
    sc = score_vector(score, big_n - 1, score_mode)
    null = _build_null(m - 1, n, sc, mode, root.substream(1), draws, scale)
    crit = randomized_critical_value(null, alpha)

    stats = np.empty(m)
    for i in range(m):
        rv = ranks(interpoint_distances(pooled, i, kernel), g_data)
        stats[i] = _statistic_for(null, sc, rv, m - 1, scale)
    s = float(stats[i_drawn])
    decision = rejection_probability(s, crit)
    p_value = float(np.mean([null.prob_at_or_above(v) for v in stats]))
    return RankTestResult(
        scheme="randomized",
        statistic=s,
        alpha=alpha,
        c_alpha=crit.c_alpha,
        gamma=crit.gamma,
        decision=decision,
        reject=_resolve(decision, g_data),
        p_value=p_value,
        null_mode=null.mode,
        seed=root,
        details={"kernel": kernel, "score": score, "drawn": i_drawn},
    )


# ---------------------------------------------------------------------------
# one-sided two-sample Kolmogorov-Smirnov


def _ks_statistic(x: np.ndarray, y: np.ndarray) -> float:
    """One-sided statistic sup_t (F_m(t) - G_n(t)).

    Large when the y's are stochastically larger than the x's (their ECDF
    lags).  Ties across samples are handled by evaluating the difference only
    after all observations at a value are absorbed.
    """
    m, n = x.size, y.size
    pooled = np.unique(np.concatenate([x, y]))
    cx = np.searchsorted(np.sort(x), pooled, side="right") / m
    cy = np.searchsorted(np.sort(y), pooled, side="right") / n
    return float(max(np.max(cx - cy), 0.0))


def _ks_exact_upper_p(x: np.ndarray, y: np.ndarray, observed: float) -> float:
    m, n = x.size, y.size
    big_n = m + n
    pooled = np.sort(np.concatenate([x, y]))
    # positions where a tie block of equal pooled values ends; the ECDF
    # difference is evaluated only there
    block_ends = np.nonzero(np.r_[pooled[1:] != pooled[:-1], True])[0]
    count = 0
    total = math.comb(big_n, n)
    it = itertools.combinations(range(big_n), n)
    while True:
        chunk = list(itertools.islice(it, 50_000))
        if not chunk:
            break
        mask = np.zeros((len(chunk), big_n), dtype=np.int8)
        rows = np.repeat(np.arange(len(chunk)), n)
        mask[rows, np.asarray(chunk, dtype=np.int64).ravel()] = 1
        cum_y = np.cumsum(mask, axis=1)[:, block_ends]
        cum_x = (block_ends + 1) - cum_y
        d = np.maximum((cum_x / m - cum_y / n).max(axis=1), 0.0)
        count += int(np.count_nonzero(d >= observed - 1e-12))
    return count / total


def ks_two_sample(
    x,
    y,
    alpha: float = 0.05,
    *,
    exact_cap: int = 20_000,
    seed: RngSeed | int | None = None,
) -> RankTestResult:
    """One-sided two-sample Kolmogorov-Smirnov test (y stochastically larger).

    Rejects when sqrt(mn/N) * D+ >= sqrt(-log(alpha)/2), the asymptotic
    critical value.  The p-value is the exact permutation tail when
    C(N, n) <= exact_cap, otherwise the asymptotic exp(-2 t**2).
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    m, n = x.size, y.size
    if m < 1 or n < 1:
        raise ValueError("both samples must be nonempty")
    d_plus = _ks_statistic(x, y)
    t = math.sqrt(m * n / (m + n)) * d_plus
    threshold = math.sqrt(-0.5 * math.log(alpha))
    reject = t >= threshold
    if math.comb(m + n, n) <= exact_cap:
        p_value = _ks_exact_upper_p(x, y, d_plus)
        null_mode = "exact-enumeration"
    else:
        p_value = min(1.0, math.exp(-2.0 * t * t))
        null_mode = "asymptotic"
    return RankTestResult(
        scheme="ks",
        statistic=d_plus,
        alpha=alpha,
        c_alpha=threshold,
        gamma=0.0,
        decision=1.0 if reject else 0.0,
        reject=reject,
        p_value=p_value,
        null_mode=null_mode,
        seed=as_seed(seed),
        details={"scaled_statistic": t},
    )
