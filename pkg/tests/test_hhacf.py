import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import pearson_oracle
from windrisk.boxplot import summarize
from windrisk.errors import AllDaysDegenerate, EmptyDistribution, InvalidParameter, ZeroVariance
from windrisk.hhacf import (
    LagDistribution,
    autocorr,
    hhacf_distribution,
    lag_uncertainty,
    plant_count,
    size_compensation_fleet,
)

COS_DAY = np.cos(2 * np.pi * np.arange(24) / 24)


def test_lag_zero_is_one():
    assert autocorr(np.arange(24.0) ** 1.5, 0) == pytest.approx(1.0, abs=1e-15)


def test_cosine_half_period_antiphase():
    assert autocorr(COS_DAY, 12) == pytest.approx(-1.0, abs=1e-9)


def test_constant_profile():
    with pytest.raises(ZeroVariance):
        autocorr(np.full(24, 7.0), 1)


def test_lag_bounds():
    with pytest.raises(InvalidParameter):
        autocorr(COS_DAY, 23)
    with pytest.raises(InvalidParameter):
        autocorr(COS_DAY[:20], 1)


day_values = arrays(float, 24, elements=st.floats(0, 30, allow_nan=False, allow_subnormal=False))


@given(day_values, st.integers(1, 22), st.floats(0.01, 100), st.floats(-50, 50))
def test_affine_invariance(day, lag, a, b):
    try:
        base = autocorr(day, lag)
        moved = autocorr(a * day + b, lag)
    except ZeroVariance:
        return
    # skip numerically near-degenerate days where relative spread is at rounding level
    assume(np.ptp(day) > 1e-6 * (1 + np.abs(day).max()))
    assert -1 <= base <= 1
    assert moved == pytest.approx(base, abs=1e-9)


def test_distribution_identical_days():
    days = np.tile(COS_DAY + 2, (15, 1))
    for dist in hhacf_distribution(days, 6):
        assert dist.summary.iqr == 0
        assert len(dist.coefficients) == 15


def test_distribution_matches_direct_formula():
    rng = np.random.default_rng(2024)
    days = rng.uniform(0, 25, (15, 24))
    for dist in hhacf_distribution(days, 6):
        expected = [pearson_oracle(d, dist.lag) for d in days]
        np.testing.assert_allclose(dist.coefficients, expected, rtol=0, atol=1e-12)


def test_constant_day_is_skipped():
    rng = np.random.default_rng(1)
    days = rng.uniform(0, 25, (5, 24))
    days[2] = 4.0
    dists = hhacf_distribution(days, 3)
    assert all(d.skipped == 1 and len(d.coefficients) == 4 for d in dists)


def test_all_days_degenerate():
    with pytest.raises(AllDaysDegenerate):
        hhacf_distribution(np.full((3, 24), 5.0), 2)


def dist_of(coeffs, lag=1):
    return LagDistribution(lag, tuple(coeffs), 0, summarize(coeffs))


def test_uncertainty_perfect_correlation():
    assert lag_uncertainty(dist_of([1.0] * 15)) == 0.0


def test_uncertainty_at_95_percent():
    # 2.5th percentile of 15 values sits 0.35 of the way from x(0) to x(1)
    lowest, second = 0.7, 0.75
    coeffs = [lowest, second] + [0.9] * 13
    rho_low = lowest + 0.35 * (second - lowest)
    assert lag_uncertainty(dist_of(coeffs)) == pytest.approx((1 - rho_low) * 100, abs=1e-12)
    assert lag_uncertainty(dist_of([0.7158] * 15)) == pytest.approx(28.42, abs=1e-9)


def test_uncertainty_with_outliers_uses_minimum():
    coeffs = [0.3845] + [0.9] * 14
    assert lag_uncertainty(dist_of(coeffs), include_outliers=True) == pytest.approx(61.55, abs=1e-9)


def test_uncertainty_empty():
    empty = LagDistribution(1, (), 0, summarize([0.5]))
    with pytest.raises(EmptyDistribution):
        lag_uncertainty(empty)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_uncertainty_monotone(r1, r2):
    lo, hi = sorted((r1, r2))
    assert lag_uncertainty(dist_of([hi] * 5)) <= lag_uncertainty(dist_of([lo] * 5))


@pytest.mark.parametrize("fraction, plants", [(1.0, 8), (0.2, 40)])
def test_fleet_examples(fraction, plants):
    plan = size_compensation_fleet(2.0, 0.25, fraction)
    assert [c.plants for c in plan.classes] == [plants] * 3
    assert [c.lag for c in plan.classes] == [1, 2, 3]


def test_fleet_zero_deficit():
    assert plant_count(0.0, 0.25, 0.3) == 0


def test_fleet_per_class_mapping():
    plan = size_compensation_fleet({1: 2.0, 2: 1.0, 3: 0.1}, 0.25, 1.0)
    assert [c.plants for c in plan.classes] == [8, 4, 1]
    assert plan.total_plants == 13


@given(st.floats(0, 50), st.floats(0.01, 2), st.floats(0.05, 1))
def test_fleet_covers_deficit(deficit, nameplate, fraction):
    n = plant_count(deficit, nameplate, fraction)
    assert n >= 0
    assert n * nameplate * fraction >= deficit * (1 - 1e-12)
    if n > 0:
        assert (n - 1) * nameplate * fraction < deficit


@given(st.floats(0, 20), st.floats(0, 20), st.floats(0.05, 1), st.floats(0.05, 1))
def test_fleet_monotone(d1, d2, f1, f2):
    lo, hi = sorted((d1, d2))
    assert plant_count(lo, 0.25, 0.5) <= plant_count(hi, 0.25, 0.5)
    flo, fhi = sorted((f1, f2))
    assert plant_count(5.0, 0.25, fhi) <= plant_count(5.0, 0.25, flo)
    assert plant_count(5.0, 0.5, 0.5) <= plant_count(5.0, 0.25, 0.5)


def test_fleet_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        plant_count(1.0, 0.0, 0.5)
    with pytest.raises(InvalidParameter):
        plant_count(1.0, 0.25, 0.0)
    with pytest.raises(InvalidParameter):
        plant_count(-1.0, 0.25, 0.5)
    assert math.isfinite(plant_count(1e3, 0.25, 1.0))
