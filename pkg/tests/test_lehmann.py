import math

import numpy as np
import pytest
from scipy import stats

from distrank import lehmann
from distrank.lehmann import FAMILIES, LehmannAlternative
from distrank.rng import RngSeed

ALTS = [
    LehmannAlternative("wilcoxon", 0.0),
    LehmannAlternative("wilcoxon", 0.3),
    LehmannAlternative("wilcoxon", 0.9),
    LehmannAlternative("psi", 0.0),
    LehmannAlternative("psi", 0.7),
    LehmannAlternative("psi", 2.5),
    LehmannAlternative("savage", 0.0),
    LehmannAlternative("savage", 1.0),
    LehmannAlternative("savage", 4.0),
]


def test_cdf_known_values():
    assert lehmann.cdf(LehmannAlternative("wilcoxon", 0.5), 0.5, sample=2) == pytest.approx(
        0.375, abs=1e-15
    )
    for kind in FAMILIES:
        assert lehmann.cdf(LehmannAlternative(kind, 0.0), 0.3, sample=2) == pytest.approx(
            0.3, abs=1e-15
        )
    assert lehmann.cdf(LehmannAlternative("savage", 1.0), 0.5, sample=2) == pytest.approx(
        0.25, abs=1e-15
    )


def test_quantile_known_values():
    assert lehmann.quantile(LehmannAlternative("wilcoxon", 0.5), 0.375, sample=2) == pytest.approx(
        0.5, abs=1e-12
    )
    for kind in FAMILIES:
        assert lehmann.quantile(LehmannAlternative(kind, 0.0), 0.7, sample=2) == pytest.approx(
            0.7, abs=1e-15
        )
    assert lehmann.quantile(LehmannAlternative("savage", 1.0), 0.25, sample=2) == pytest.approx(
        0.5, abs=1e-12
    )


@pytest.mark.parametrize("alt", ALTS, ids=lambda a: f"{a.kind}-{a.delta}")
@pytest.mark.parametrize("sample", [1, 2])
def test_cdf_shape_and_round_trip(alt, sample):
    u = np.linspace(0.0, 1.0, 401)
    g = lehmann.cdf(alt, u, sample)
    assert g[0] == 0.0 and g[-1] == 1.0
    assert np.all(np.diff(g) >= 0)
    back = lehmann.quantile(alt, g, sample)
    assert np.max(np.abs(back - u)) < 1e-10
    forward = lehmann.cdf(alt, lehmann.quantile(alt, u, sample), sample)
    assert np.max(np.abs(forward - u)) < 1e-10


def test_psi_stochastic_ordering():
    alt = LehmannAlternative("psi", 1.3)
    u = np.linspace(0.01, 0.99, 99)
    assert np.all(lehmann.cdf(alt, u, 1) >= u)
    assert np.all(u >= lehmann.cdf(alt, u, 2))


def test_domain_and_parameter_validation():
    alt = LehmannAlternative("psi", 0.5)
    with pytest.raises(ValueError):
        lehmann.cdf(alt, 1.5)
    with pytest.raises(ValueError):
        lehmann.quantile(alt, -0.1)
    with pytest.raises(ValueError):
        lehmann.cdf(alt, 0.5, sample=3)
    with pytest.raises(ValueError):
        LehmannAlternative("wilcoxon", 1.0)
    with pytest.raises(ValueError):
        LehmannAlternative("savage", -0.2)
    with pytest.raises(ValueError):
        LehmannAlternative("cauchy", 0.5)


def test_density_integrates_to_one():
    u = np.linspace(0.0, 1.0, 200_001)
    for alt in ALTS:
        for sample in (1, 2):
            total = np.trapezoid(lehmann.density(alt, u, sample), u)
            assert total == pytest.approx(1.0, abs=1e-8)


def test_kolmogorov_distance_closed_forms():
    assert lehmann.kolmogorov_distance(LehmannAlternative("wilcoxon", 0.2)) == pytest.approx(
        (0.05, 0.5), abs=1e-15
    )
    d, u = lehmann.kolmogorov_distance(LehmannAlternative("psi", 1.0))
    assert (d, u) == pytest.approx((0.5, 0.5), abs=1e-15)
    d, u = lehmann.kolmogorov_distance(LehmannAlternative("savage", 1.0))
    assert (d, u) == pytest.approx((0.25, 0.5), abs=1e-12)


@pytest.mark.parametrize("alt", [a for a in ALTS if a.delta > 0], ids=lambda a: f"{a.kind}-{a.delta}")
def test_kolmogorov_distance_matches_grid_supremum(alt):
    u = np.linspace(0.0, 1.0, 100_001)
    gap = np.abs(lehmann.cdf(alt, u, 1) - lehmann.cdf(alt, u, 2))
    d, u_max = lehmann.kolmogorov_distance(alt)
    assert d == pytest.approx(np.max(gap), abs=1e-6)
    assert gap[np.argmin(np.abs(u - u_max))] == pytest.approx(d, abs=1e-6)


def test_sample_pooled_deterministic_and_sized():
    alt = LehmannAlternative("psi", 0.8)
    a = lehmann.sample_pooled(alt, 5, 7, seed=RngSeed(11))
    b = lehmann.sample_pooled(alt, 5, 7, seed=RngSeed(11))
    assert a.shape == (12,)
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        lehmann.sample_pooled(alt, 0, 3)


def test_sample_pooled_uniform_under_hypothesis():
    alt = LehmannAlternative("wilcoxon", 0.0)
    draws = lehmann.sample_pooled(alt, 5000, 5000, seed=1)
    assert stats.kstest(draws, "uniform").pvalue > 0.01


def test_sample_pooled_second_group_moments():
    # mean of the second group's law: 1/2 + delta/6 for the wilcoxon family,
    # 2/3 for savage at delta = 1 (a Beta(2, 1) draw)
    alt = LehmannAlternative("wilcoxon", 0.5)
    z = lehmann.sample_pooled(alt, 1, 100_000, seed=2)
    assert z[1:].mean() == pytest.approx(0.5 + 0.5 / 6.0, abs=0.003)
    alt = LehmannAlternative("savage", 1.0)
    z = lehmann.sample_pooled(alt, 1, 100_000, seed=3)
    assert z[1:].mean() == pytest.approx(2.0 / 3.0, abs=0.003)


def test_transform_hook_preserves_ranks():
    alt = LehmannAlternative("savage", 0.7)
    base = lehmann.sample_pooled(alt, 10, 10, seed=4)
    mapped = lehmann.sample_pooled(alt, 10, 10, seed=4, transform=lambda u: np.exp(3 * u) - 7)
    assert np.array_equal(np.argsort(base), np.argsort(mapped))
