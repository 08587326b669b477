"""Local asymptotic powers, relative efficiencies, slope approximations, and
a numerical contiguity verifier for the Lehmann families.

Under local parameters d_N = d0 / sqrt(N) the centered rank statistic is
asymptotically normal with mean ``lam (1-lam) integral(phi phi*)`` and variance
``lam (1-lam) integral(phi^2)``, where phi is the test's score function and
phi* is the family's local score (the Delta-derivative of the log density at
the hypothesis, with both-sample perturbations entering as the difference of
the per-sample scores).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import log_ndtr, ndtr, ndtri

from . import lehmann, scores
from .lehmann import FAMILIES, PSI, SAVAGE, WILCOXON
from .scores import SCORE_KINDS

__all__ = [
    "optimal_score",
    "asymptotic_mu_sigma",
    "local_power",
    "relative_efficiency",
    "efficiency_table",
    "LMP_SCORE",
    "wilcoxon_local_power",
    "ks_local_power",
    "power_slopes",
    "hellinger_sq",
    "ContiguityReport",
    "contiguity_check",
]

# which classical score family is locally most powerful against each alternative
LMP_SCORE = {WILCOXON: scores.WILCOXON, PSI: scores.PSI, SAVAGE: scores.SAVAGE}


def optimal_score(family: str) -> Callable[[np.ndarray], np.ndarray]:
    """The family's local score function on (0, 1).

    For the wilcoxon family this is 2u - 1, for savage 1 + ln u; the psi
    family perturbs both samples, and the effective contrast is the difference
    (1 + ln u) - (1 + ln(1-u)) = ln u - ln(1-u).
    """
    if family == WILCOXON:
        return lambda u: 2.0 * np.asarray(u, dtype=float) - 1.0
    if family == PSI:
        return lambda u: np.log(u) - np.log1p(-np.asarray(u, dtype=float))
    if family == SAVAGE:
        return lambda u: 1.0 + np.log(u)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


_LOG2 = math.log(2.0)
_PI2 = math.pi**2

# integral(phi_score * phi*_family) on (0, 1); None falls back to quadrature
_CROSS_CLOSED: dict[tuple[str, str], float | None] = {
    (scores.WILCOXON, WILCOXON): 1.0 / 3.0,
    (scores.WILCOXON, PSI): 1.0,
    (scores.WILCOXON, SAVAGE): 0.5,
    (scores.PSI, WILCOXON): 1.0,
    (scores.PSI, PSI): _PI2 / 3.0,
    (scores.PSI, SAVAGE): _PI2 / 6.0,
    (scores.SAVAGE, WILCOXON): 0.5,
    (scores.SAVAGE, PSI): _PI2 / 6.0,
    (scores.SAVAGE, SAVAGE): 1.0,
    (scores.VAN_DER_WAERDEN, WILCOXON): 1.0 / math.sqrt(math.pi),
    (scores.VAN_DER_WAERDEN, PSI): None,
    (scores.VAN_DER_WAERDEN, SAVAGE): None,
    (scores.MEDIAN, WILCOXON): 0.5,
    (scores.MEDIAN, PSI): 2.0 * _LOG2,
    (scores.MEDIAN, SAVAGE): _LOG2,
}

# integral(phi_score^2) on (0, 1)
_SQUARED_CLOSED: dict[str, float] = {
    scores.WILCOXON: 1.0 / 3.0,
    scores.PSI: _PI2 / 3.0,
    scores.SAVAGE: 1.0,
    scores.VAN_DER_WAERDEN: 1.0,
    scores.MEDIAN: 1.0,
}


def _quad_unit(fn, **kw) -> float:
    val, err = integrate.quad(fn, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=500, **kw)
    if not math.isfinite(val) or err > 1e-8:
        raise ArithmeticError(f"quadrature did not converge (error estimate {err:.2e})")
    return val


def _normal_pdf(x):
    return np.exp(-0.5 * np.asarray(x) ** 2) / math.sqrt(2.0 * math.pi)


def _optimal_score_at_normal(family: str, x) -> np.ndarray:
    """Family local score evaluated at u = Phi(x) without log-of-CDF overflow."""
    x = np.asarray(x, dtype=float)
    if family == WILCOXON:
        return 2.0 * ndtr(x) - 1.0
    if family == PSI:
        return log_ndtr(x) - log_ndtr(-x)
    return 1.0 + log_ndtr(x)


@lru_cache(maxsize=64)
def _cross_moment(score_kind: str, family: str, method: str = "closed") -> float:
    closed = _CROSS_CLOSED.get((score_kind, family), None)
    if method == "closed" and closed is not None:
        return closed
    fstar = optimal_score(family)
    if score_kind == scores.VAN_DER_WAERDEN:
        # substitute u = Phi(x); the integrand then decays like a Gaussian
        def integrand(x):
            return x * _optimal_score_at_normal(family, x) * _normal_pdf(x)

        val, err = integrate.quad(integrand, -40.0, 40.0, epsabs=1e-12, epsrel=1e-12, limit=400)
        if err > 1e-8:
            raise ArithmeticError(f"quadrature did not converge (error estimate {err:.2e})")
        return val
    if score_kind == scores.MEDIAN:
        # split at the sign change so the discontinuity sits on a panel edge
        a, _ = integrate.quad(fstar, 0.0, 0.5, epsabs=1e-12, epsrel=1e-12, limit=400)
        b, _ = integrate.quad(fstar, 0.5, 1.0, epsabs=1e-12, epsrel=1e-12, limit=400)
        return b - a
    return _quad_unit(lambda u: scores.phi(score_kind, u) * fstar(u))


@lru_cache(maxsize=32)
def _squared_moment(score_kind: str, method: str = "closed") -> float:
    if method == "closed":
        return _SQUARED_CLOSED[score_kind]
    if score_kind == scores.VAN_DER_WAERDEN:

        def integrand(x):
            return x * x * _normal_pdf(x)

        val, _ = integrate.quad(integrand, -np.inf, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
        return val
    return _quad_unit(lambda u: scores.phi(score_kind, u) ** 2)


def asymptotic_mu_sigma(
    score_kind: str, family: str, lam: float = 0.5, method: str = "closed"
) -> tuple[float, float]:
    """Asymptotic mean and standard deviation of the centered rank statistic.

    mu = lam (1-lam) integral(phi phi*), sigma^2 = lam (1-lam) integral(phi^2),
    per unit of the local parameter d0.  ``method="quadrature"`` bypasses the
    closed-form table (used to cross-check it).
    """
    if not 0 < lam < 1:
        raise ValueError("lam must lie in (0, 1)")
    if score_kind not in SCORE_KINDS:
        raise ValueError(f"unknown score kind {score_kind!r}")
    w = lam * (1.0 - lam)
    mu = w * _cross_moment(score_kind, family, method)
    sigma = math.sqrt(w * _squared_moment(score_kind, method))
    return mu, sigma


def local_power(
    score_kind: str,
    family: str,
    delta0: float,
    lam: float = 0.5,
    alpha: float = 0.05,
    method: str = "closed",
) -> float:
    """Limiting power of the size-alpha rank test under d_N = d0/sqrt(N)."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if delta0 < 0:
        raise ValueError("delta0 must be nonnegative")
    mu, sigma = asymptotic_mu_sigma(score_kind, family, lam, method)
    return float(1.0 - ndtr(ndtri(1.0 - alpha) - delta0 * mu / sigma))


def relative_efficiency(
    score1: str, score2: str, family: str, lam: float = 0.5, method: str = "closed"
) -> float:
    """Asymptotic efficiency of the `score1` test relative to the `score2` test.

    The squared ratio of standardized asymptotic means under the same local
    alternative; the lam(1-lam) factor cancels, so the value is independent
    of lam.
    """
    mu1, s1 = asymptotic_mu_sigma(score1, family, lam, method)
    mu2, s2 = asymptotic_mu_sigma(score2, family, lam, method)
    if mu2 == 0:
        raise ZeroDivisionError("reference test has zero asymptotic slope")
    return ((mu1 / s1) / (mu2 / s2)) ** 2


def efficiency_table(method: str = "closed") -> dict[str, dict[str, float]]:
    """Efficiencies of the five classical tests relative to each family's
    locally most powerful test; rows are families, columns score kinds."""
    table: dict[str, dict[str, float]] = {}
    for family in FAMILIES:
        reference = LMP_SCORE[family]
        table[family] = {
            kind: relative_efficiency(kind, reference, family, method=method)
            for kind in SCORE_KINDS
        }
    return table


def wilcoxon_local_power(
    delta0: float, lam: float = 0.5, alpha: float = 0.05
) -> float:
    """Closed-form local power of the Wilcoxon test against the wilcoxon family:
    1 - Phi(Phi^{-1}(1-alpha) - d0 sqrt(lam(1-lam)/3))."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if not 0 < lam < 1:
        raise ValueError("lam must lie in (0, 1)")
    return float(1.0 - ndtr(ndtri(1.0 - alpha) - delta0 * math.sqrt(lam * (1.0 - lam) / 3.0)))


def _ks_drift(alpha: float, u) -> np.ndarray:
    c = math.sqrt(-0.5 * math.log(alpha))
    u = np.asarray(u, dtype=float)
    return 2.0 * ndtr((2.0 * u - 1.0) * c / np.sqrt(u * (1.0 - u))) - 1.0


@lru_cache(maxsize=64)
def _ks_slope_integral(alpha: float) -> float:
    # integral((2u-1) * psi(alpha, u)) on (0, 1); bounded integrand
    return _quad_unit(lambda u: (2.0 * u - 1.0) * _ks_drift(alpha, u))


def ks_local_power(delta0: float, lam: float = 0.5, alpha: float = 0.05) -> float:
    """First-order local power of the one-sided Kolmogorov-Smirnov test:
    alpha + 2 d0 sqrt(lam(1-lam)) alpha sqrt(-log(alpha)/2) integral((2u-1) psi).

    A linear approximation around d0 = 0; good only locally and for large
    samples.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    c = math.sqrt(-0.5 * math.log(alpha))
    return float(
        alpha
        + 2.0 * delta0 * math.sqrt(lam * (1.0 - lam)) * alpha * c * _ks_slope_integral(alpha)
    )


@dataclass(frozen=True)
class PowerSlopes:
    ks: float
    wilcoxon: float
    ratio: float  # wilcoxon / ks


def power_slopes(
    alpha: float, lam: float | None = None, ks_critical_factor: bool = False
) -> PowerSlopes:
    """Leading power slopes in d0 of the Wilcoxon and one-sided K-S tests.

    With ``lam=None`` the lam(1-lam) = 1 normalization is used (the
    convention under which the published slope table reproduces); passing a
    lam in (0, 1) multiplies both slopes by sqrt(lam(1-lam)).  The slope-table
    convention omits the sqrt(-log(alpha)/2) factor from the K-S slope;
    ``ks_critical_factor=True`` restores it (the form used by the K-S local
    power expansion).
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    factor = 1.0 if lam is None else math.sqrt(lam * (1.0 - lam))
    wilcoxon = factor * float(_normal_pdf(ndtri(1.0 - alpha))) / math.sqrt(3.0)
    ks = factor * 2.0 * alpha * _ks_slope_integral(alpha)
    if ks_critical_factor:
        ks *= math.sqrt(-0.5 * math.log(alpha))
    return PowerSlopes(ks=ks, wilcoxon=wilcoxon, ratio=wilcoxon / ks)


# ---------------------------------------------------------------------------
# contiguity of the local alternatives


def hellinger_sq(family: str, sample: int, delta: float) -> float:
    """Squared Hellinger distance between a group density and the uniform:
    integral((sqrt(g(u)) - 1)^2) on (0, 1), computed by quadrature."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    if delta == 0:
        return 0.0
    alt = lehmann.LehmannAlternative(family, delta)

    def integrand(u):
        return (math.sqrt(lehmann.density(alt, u, sample)) - 1.0) ** 2

    return _quad_unit(integrand)


def _tail_mass_one(family: str, sample: int, delta: float, c: float) -> float:
    """Mass the group distribution puts on density ratio >= c (uniform baseline)."""
    if delta == 0 or (family in (WILCOXON, SAVAGE) and sample == 1):
        return 1.0 if c <= 1.0 else 0.0
    if family == WILCOXON:
        # ratio 1 - d + 2 d u, increasing, range [1-d, 1+d]
        if c > 1.0 + delta:
            return 0.0
        if c <= 1.0 - delta:
            return 1.0
        u_c = (c - 1.0 + delta) / (2.0 * delta)
        return 1.0 - ((1.0 - delta) * u_c + delta * u_c**2)
    # power-type density (1+d) t^d with t = u (second sample) or 1-u (psi first);
    # both give the same mass profile
    if c > 1.0 + delta:
        return 0.0
    if c <= 0.0:
        return 1.0
    u_c = (c / (1.0 + delta)) ** (1.0 / delta)
    return 1.0 - u_c ** (1.0 + delta)


@dataclass(frozen=True)
class ContiguityReport:
    """Numerical check of the two contiguity conditions at d_N = d0/sqrt(N)."""

    family: str
    delta0: float
    m: int
    n: int
    delta_n: float
    sum_h2: float
    bound: float
    max_density_ratio: float
    passed: bool
    tail_mass: Callable[[float], float]


def contiguity_check(family: str, delta0: float, m: int, n: int) -> ContiguityReport:
    """Verify the Hellinger-sum bound and likelihood-ratio tail condition.

    ``sum_h2`` is the summed squared Hellinger distance of the N per-draw
    alternatives from the hypothesis at d_N = d0/sqrt(N); ``bound`` is the
    family's analytic bound (n d_N^2 / 3 for wilcoxon, N d_N^2 for psi,
    7 n d_N^2 for savage).  ``tail_mass(c)`` returns the total mass the
    alternative puts on density ratio >= c; it vanishes identically for
    c > 1 + d_N.
    """
    if delta0 < 0:
        raise ValueError("delta0 must be nonnegative")
    big_n = m + n
    delta_n = delta0 / math.sqrt(big_n)
    if family == WILCOXON and delta_n >= 1:
        raise ValueError("wilcoxon family needs delta0/sqrt(N) < 1")
    sum_h2 = m * hellinger_sq(family, 1, delta_n) + n * hellinger_sq(family, 2, delta_n)
    if family == WILCOXON:
        bound = n * delta_n**2 / 3.0
    elif family == PSI:
        bound = big_n * delta_n**2
    else:
        bound = 7.0 * n * delta_n**2
    ratio_cap = 1.0 + delta_n

    def tail_mass(c: float) -> float:
        return m * _tail_mass_one(family, 1, delta_n, c) + n * _tail_mass_one(
            family, 2, delta_n, c
        )

    passed = sum_h2 <= bound + 1e-12 and tail_mass(ratio_cap * (1.0 + 1e-12)) == 0.0
    return ContiguityReport(
        family, delta0, m, n, delta_n, sum_h2, bound, ratio_cap, passed, tail_mass
    )
