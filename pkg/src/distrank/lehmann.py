"""Lehmann-type alternative families on the uniform scale.

The three families describe how the second sample's distribution departs from
the first's as a functional of the common baseline CDF.  Written on the
uniform scale (baseline = uniform on [0, 1]), the pair of group CDFs is

* ``wilcoxon``:  G1(u) = u,                 G2(u) = (1 - d) u + d u**2
* ``psi``:       G1(u) = 1 - (1 - u)**(1+d), G2(u) = u**(1+d)
* ``savage``:    G1(u) = u,                 G2(u) = u**(1+d)

with parameter ``d >= 0`` (``d = 0`` is the hypothesis).  Rank statistics are
distribution-free under these alternatives, so sampling on the uniform scale
loses no generality; an arbitrary strictly increasing quantile hook is
provided for convenience.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .rng import RngSeed, as_seed

__all__ = [
    "WILCOXON",
    "PSI",
    "SAVAGE",
    "FAMILIES",
    "LehmannAlternative",
    "cdf",
    "quantile",
    "density",
    "sample_pooled",
    "kolmogorov_distance",
]

WILCOXON = "wilcoxon"
PSI = "psi"
SAVAGE = "savage"
FAMILIES = (WILCOXON, PSI, SAVAGE)


@dataclass(frozen=True)
class LehmannAlternative:
    """A tagged Lehmann family with its parameter.

    ``delta`` must be nonnegative; the ``wilcoxon`` family additionally
    requires ``delta < 1`` (the mixture weight of the squared CDF).
    """

    kind: str
    delta: float

    def __post_init__(self) -> None:
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILIES}")
        if not self.delta >= 0:
            raise ValueError("delta must be nonnegative")
        if self.kind == WILCOXON and not self.delta < 1:
            raise ValueError("the wilcoxon family requires delta < 1")


def _check_unit(u, name: str) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0) or np.any(arr > 1):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def cdf(alt: LehmannAlternative, u, sample: int = 2):
    """Group CDF of `alt` on the uniform scale.

    ``sample`` selects the group: 1 for the first sample, 2 for the second.
    Nondecreasing on [0, 1], equal to ``u`` at ``delta = 0``.
    """
    arr = _check_unit(u, "u")
    d = alt.delta
    if sample not in (1, 2):
        raise ValueError("sample must be 1 or 2")
    if sample == 1:
        if alt.kind == PSI:
            out = 1.0 - (1.0 - arr) ** (1.0 + d)
        else:
            out = arr.copy()
    else:
        if alt.kind == WILCOXON:
            out = (1.0 - d) * arr + d * arr**2
        else:
            out = arr ** (1.0 + d)
    return out if out.ndim else float(out)


def quantile(alt: LehmannAlternative, v, sample: int = 2):
    """Inverse of :func:`cdf`; round-trips with it to ~1e-12."""
    arr = _check_unit(v, "v")
    d = alt.delta
    if sample not in (1, 2):
        raise ValueError("sample must be 1 or 2")
    if sample == 1:
        if alt.kind == PSI:
            out = 1.0 - (1.0 - arr) ** (1.0 / (1.0 + d))
        else:
            out = arr.copy()
    else:
        if alt.kind == WILCOXON:
            if d == 0:
                out = arr.copy()
            else:
                # positive root of d t^2 + (1-d) t - v = 0; clip the last-ulp
                # overshoot of the root formula at the right endpoint
                b = 1.0 - d
                out = np.clip((-b + np.sqrt(b * b + 4.0 * d * arr)) / (2.0 * d), 0.0, 1.0)
        else:
            out = arr ** (1.0 / (1.0 + d))
    return out if out.ndim else float(out)


def density(alt: LehmannAlternative, u, sample: int = 2):
    """Density of the group distribution on the uniform scale."""
    arr = _check_unit(u, "u")
    d = alt.delta
    if sample not in (1, 2):
        raise ValueError("sample must be 1 or 2")
    if sample == 1:
        if alt.kind == PSI:
            out = (1.0 + d) * (1.0 - arr) ** d
        else:
            out = np.ones_like(arr)
    else:
        if alt.kind == WILCOXON:
            out = (1.0 - d) + 2.0 * d * arr
        else:
            out = (1.0 + d) * arr**d
    return out if out.ndim else float(out)


def sample_pooled(
    alt: LehmannAlternative,
    m: int,
    n: int,
    seed: RngSeed | int | None = None,
    transform: Callable[[np.ndarray], np.ndarray] | None = None,
) -> np.ndarray:
    """Draw a pooled sample of ``m + n`` values under the alternative.

    The first ``m`` entries are i.i.d. from the first group's distribution and
    the last ``n`` from the second's, both on the uniform scale.  ``transform``
    optionally maps the draws through a strictly increasing quantile function
    to put them on an arbitrary data scale (ranks are unaffected).
    """
    if m < 1 or n < 1:
        raise ValueError("group sizes must be at least 1")
    rng = as_seed(seed).generator()
    u = rng.random(m + n)
    out = np.empty(m + n)
    out[:m] = quantile(alt, u[:m], sample=1)
    out[m:] = quantile(alt, u[m:], sample=2)
    if transform is not None:
        out = np.asarray(transform(out), dtype=float)
    return out


def kolmogorov_distance(alt: LehmannAlternative) -> tuple[float, float]:
    """Kolmogorov distance between the two group CDFs and its argmax.

    Returns ``(distance, u_max)`` where ``u_max`` is the baseline-CDF value at
    which ``|G1 - G2|`` is maximal.  Closed forms:

    * wilcoxon: ``(delta / 4, 1/2)``
    * psi:      ``(1 - 2**-delta, 1/2)``
    * savage:   ``(delta (1+delta)**(-1-1/delta), (1+delta)**(-1/delta))``
    """
    d = alt.delta
    if d == 0:
        # degenerate: the two CDFs coincide; argmax is the delta -> 0+ limit
        return 0.0, (math.exp(-1.0) if alt.kind == SAVAGE else 0.5)
    if alt.kind == WILCOXON:
        return d / 4.0, 0.5
    if alt.kind == PSI:
        return 1.0 - 2.0**-d, 0.5
    u_max = (1.0 + d) ** (-1.0 / d)
    return d * (1.0 + d) ** (-1.0 - 1.0 / d), u_max
