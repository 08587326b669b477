import math

import numpy as np
import pytest

from distrank import asymptotics, lehmann
from distrank.asymptotics import (
    asymptotic_mu_sigma,
    contiguity_check,
    efficiency_table,
    hellinger_sq,
    ks_local_power,
    local_power,
    optimal_score,
    power_slopes,
    relative_efficiency,
    wilcoxon_local_power,
)

FAMILIES = ("wilcoxon", "psi", "savage")
KINDS = ("wilcoxon", "psi", "savage", "van-der-waerden", "median")


def test_optimal_score_values():
    assert optimal_score("wilcoxon")(0.5) == 0.0
    assert optimal_score("savage")(math.exp(-1.0)) == pytest.approx(0.0, abs=1e-15)
    assert optimal_score("psi")(0.5) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError):
        optimal_score("cauchy")


@pytest.mark.parametrize("family", FAMILIES)
def test_optimal_score_is_log_density_derivative(family):
    # finite-difference oracle at delta = 0, combining the two samples'
    # contributions with opposite signs (second minus first)
    u = np.linspace(0.05, 0.95, 19)
    h = 1e-6
    up = lehmann.LehmannAlternative(family, h)
    fd = (
        np.log(lehmann.density(up, u, 2)) - np.log(lehmann.density(up, u, 1))
    ) / h
    assert np.max(np.abs(optimal_score(family)(u) - fd)) < 1e-4


def test_mu_sigma_closed_values():
    mu, sigma = asymptotic_mu_sigma("wilcoxon", "wilcoxon", 0.5)
    assert mu == pytest.approx(1 / 12, abs=1e-15)
    assert sigma**2 == pytest.approx(1 / 12, abs=1e-15)
    mu, sigma = asymptotic_mu_sigma("savage", "wilcoxon", 0.5)
    assert mu == pytest.approx(0.25 * 0.5, abs=1e-15)
    assert sigma**2 == pytest.approx(0.25 * 1.0, abs=1e-15)
    with pytest.raises(ValueError):
        asymptotic_mu_sigma("wilcoxon", "wilcoxon", 1.5)


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("family", FAMILIES)
def test_quadrature_matches_closed_forms(kind, family):
    closed = asymptotic_mu_sigma(kind, family, 0.37, method="closed")
    quad = asymptotic_mu_sigma(kind, family, 0.37, method="quadrature")
    assert closed[0] == pytest.approx(quad[0], abs=1e-9)
    assert closed[1] == pytest.approx(quad[1], abs=1e-9)


def test_quadrature_matches_riemann_oracle():
    # brute-force midpoint rule on a fine grid for one awkward pairing
    u = (np.arange(10_000_000) + 0.5) / 10_000_000
    oracle = float(np.mean(np.sign(u - 0.5) * (np.log(u) - np.log1p(-u))))
    mu, _ = asymptotic_mu_sigma("median", "psi", 0.5, method="quadrature")
    assert mu / 0.25 == pytest.approx(oracle, abs=1e-7)


def test_local_power_values():
    assert local_power("wilcoxon", "wilcoxon", 0.0) == pytest.approx(0.05, abs=1e-12)
    assert round(local_power("wilcoxon", "wilcoxon", 1.0), 3) == 0.088
    assert round(local_power("wilcoxon", "wilcoxon", 3.0), 3) == 0.218
    with pytest.raises(ValueError):
        local_power("wilcoxon", "wilcoxon", -1.0)


def test_local_power_monotone_in_delta0():
    grid = [local_power("savage", "savage", d) for d in np.linspace(0, 4, 17)]
    assert np.all(np.diff(grid) > 0)


def test_wilcoxon_closed_form_consistency():
    rng = np.random.default_rng(0)
    for _ in range(100):
        lam = rng.uniform(0.05, 0.95)
        alpha = rng.uniform(0.005, 0.2)
        d0 = rng.uniform(0.0, 5.0)
        assert local_power("wilcoxon", "wilcoxon", d0, lam, alpha) == pytest.approx(
            wilcoxon_local_power(d0, lam, alpha), abs=1e-12
        )
    assert round(wilcoxon_local_power(1.0), 4) == 0.0875
    assert wilcoxon_local_power(0.0) == pytest.approx(0.05, abs=1e-12)
    assert round(wilcoxon_local_power(2.0), 3) == 0.143


def test_relative_efficiency_closed_anchors():
    assert relative_efficiency("wilcoxon", "psi", "psi") == pytest.approx(
        9 / math.pi**2, abs=1e-10
    )
    assert relative_efficiency("savage", "wilcoxon", "wilcoxon") == pytest.approx(
        0.75, abs=1e-10
    )
    assert relative_efficiency("psi", "psi", "psi") == pytest.approx(1.0, abs=1e-14)


def test_relative_efficiency_independent_of_lambda():
    for lam in (0.1, 0.5, 0.9):
        assert relative_efficiency("savage", "psi", "psi", lam) == pytest.approx(
            relative_efficiency("savage", "psi", "psi", 0.5), abs=1e-12
        )


def test_efficiency_table_shape_and_bounds():
    table = efficiency_table()
    assert set(table) == set(FAMILIES)
    for family, row in table.items():
        assert set(row) == set(KINDS)
        lmp = asymptotics.LMP_SCORE[family]
        assert row[lmp] == pytest.approx(1.0, abs=1e-12)
        for v in row.values():
            assert 0 < v <= 1.0 + 1e-12  # squared correlations


def test_power_slopes_known_values():
    sl = power_slopes(0.05)
    assert sl.wilcoxon == pytest.approx(0.05954, abs=5e-5)
    assert sl.ks == pytest.approx(0.0441, abs=1e-4)
    assert sl.ratio == pytest.approx(1.350, abs=2e-3)
    assert power_slopes(0.001).ratio == pytest.approx(2.070, abs=2e-3)
    with_lam = power_slopes(0.05, lam=0.5)
    assert with_lam.wilcoxon == pytest.approx(0.5 * sl.wilcoxon, abs=1e-12)
    assert with_lam.ratio == pytest.approx(sl.ratio, abs=1e-12)
    with_factor = power_slopes(0.05, ks_critical_factor=True)
    assert with_factor.ks == pytest.approx(
        sl.ks * math.sqrt(-0.5 * math.log(0.05)), abs=1e-12
    )


def test_ks_local_power_matches_linear_form():
    assert ks_local_power(0.0) == pytest.approx(0.05, abs=1e-13)
    assert round(ks_local_power(1.0), 3) == 0.077
    assert round(ks_local_power(3.0), 3) == 0.131


def test_hellinger_against_closed_forms():
    # closed-form oracles derived by direct integration
    for d in (0.05, 0.1, 0.3, 0.7):
        got = hellinger_sq("wilcoxon", 2, d)
        expected = 2.0 - 2.0 / (3.0 * d) * ((1 + d) ** 1.5 - (1 - d) ** 1.5)
        assert got == pytest.approx(expected, abs=1e-10)
        got = hellinger_sq("savage", 2, d)
        expected = 2.0 - 2.0 * math.sqrt(1 + d) / (1 + d / 2)
        assert got == pytest.approx(expected, abs=1e-10)
        assert hellinger_sq("psi", 1, d) == pytest.approx(expected, abs=1e-10)
    assert hellinger_sq("wilcoxon", 1, 0.5) == 0.0  # first sample unperturbed
    assert hellinger_sq("savage", 2, 0.0) == 0.0


def test_hellinger_monotone_in_delta():
    for family, sample in (("wilcoxon", 2), ("psi", 1), ("psi", 2), ("savage", 2)):
        grid = [hellinger_sq(family, sample, d) for d in np.linspace(0.0, 0.95, 12)]
        assert np.all(np.diff(grid) > 0)


def test_hellinger_bounds_from_contiguity_proof():
    assert hellinger_sq("wilcoxon", 2, 0.1) <= 0.1**2 / 3.0
    assert hellinger_sq("savage", 2, 0.1) <= 7 * 0.1**2


@pytest.mark.parametrize("family", FAMILIES)
def test_contiguity_check_passes(family):
    report = contiguity_check(family, 1.0, 500, 500)
    assert report.passed
    assert report.sum_h2 <= report.bound
    assert report.delta_n == pytest.approx(1.0 / math.sqrt(1000))
    assert report.tail_mass(report.max_density_ratio * (1 + 1e-9)) == 0.0
    assert report.tail_mass(100.0) == 0.0


def test_contiguity_zero_delta():
    report = contiguity_check("savage", 0.0, 100, 100)
    assert report.sum_h2 == 0.0
    assert report.passed


def test_contiguity_tail_mass_values():
    report = contiguity_check("wilcoxon", 1.0, 200, 200)
    d = report.delta_n
    # below the minimal density ratio every draw of both samples counts
    assert report.tail_mass(1.0 - d - 1e-9) == pytest.approx(400.0, abs=1e-9)
    # the uniform first sample sits exactly at ratio 1; the perturbed second
    # sample contributes 1 - G2(1/2) = 1/2 + d/4 of its mass there
    assert report.tail_mass(1.0) == pytest.approx(200.0 + 200.0 * (0.5 + d / 4), abs=1e-9)
