import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import grid_search_sse
from windrisk.errors import NoCrossing, NonPositiveValue, YearMismatch, ZeroTotal
from windrisk.fixtures import data_path
from windrisk.growth import (
    AnnualSeries,
    ExpFit,
    fit_exponential,
    parse_annual_csv,
    penetration_series,
    projection_year,
)

YEARS = list(range(1990, 2009))


def exact_series(a=0.5, b=0.2):
    return AnnualSeries(YEARS, [a * math.exp(b * (y - 1990)) for y in YEARS])


def test_penetration_identity():
    s = AnnualSeries([2000, 2001, 2002], [5.0, 6.0, 7.0])
    np.testing.assert_array_equal(penetration_series(s, s).values, [100.0] * 3)


def test_penetration_share():
    wind = AnnualSeries([2008], [3.5])
    total = AnnualSeries([2008], [100.0])
    assert penetration_series(wind, total).values[0] == pytest.approx(3.5)


def test_penetration_errors():
    with pytest.raises(YearMismatch):
        penetration_series(AnnualSeries([2000, 2001], [1, 2]), AnnualSeries([2000, 2002], [1, 2]))
    with pytest.raises(ZeroTotal):
        penetration_series(AnnualSeries([2000], [1]), AnnualSeries([2000], [0]))


def test_noiseless_recovery():
    fit = fit_exponential(exact_series())
    assert fit.a == pytest.approx(0.5, abs=1e-6)
    assert fit.b == pytest.approx(0.2, abs=1e-6)
    assert fit.r2 == pytest.approx(1.0, abs=1e-12)
    assert fit.t0 == 1990
    assert fit.converged and not fit.degenerate


def test_constant_series_is_degenerate():
    fit = fit_exponential(AnnualSeries(YEARS, [3.0] * len(YEARS)))
    assert fit.a == pytest.approx(3.0, rel=1e-12)
    assert fit.b == pytest.approx(0.0, abs=1e-12)
    assert fit.degenerate
    assert fit.r2 == 1.0


def test_noisy_fit_beats_grid_oracle():
    wind, total = parse_annual_csv(data_path("annual_noisy.csv"))
    pct = penetration_series(wind, total)
    fit = fit_exponential(pct)
    y = pct.values
    tau = np.array(pct.years) - pct.years[0]
    slope, intercept = np.polyfit(tau, np.log(y), 1)
    grid = grid_search_sse(list(pct.years), y.tolist(), math.exp(intercept), slope)
    assert fit.sse <= grid
    seed_sse = float(np.sum((y - math.exp(intercept) * np.exp(slope * tau)) ** 2))
    assert fit.sse <= seed_sse


def test_fit_rejects_non_positive():
    with pytest.raises(NonPositiveValue):
        fit_exponential(AnnualSeries([1, 2, 3], [1.0, 0.0, 2.0]))
    with pytest.raises(ValueError):
        fit_exponential(AnnualSeries([1, 2], [1.0, 2.0]))


@given(st.floats(0.05, 5), st.floats(0.01, 0.4), st.floats(1985, 2030))
def test_projection_round_trip(a, b, t):
    fit = ExpFit(a, b, 1990.0, 1.0, 0.0, 1)
    assert projection_year(fit, float(fit.predict(t))) == pytest.approx(t, abs=1e-9)


def test_projection_fixed_point_and_closed_form():
    fit = ExpFit(0.5, 0.2, 1990.0, 1.0, 0.0, 1)
    assert projection_year(fit, 0.5) == 1990.0
    t = projection_year(fit, 15.0)
    assert t == pytest.approx(1990 + math.log(30) / 0.2, abs=1e-12)
    assert t == pytest.approx(2007.006, abs=5e-4)
    assert float(fit.predict(t)) == pytest.approx(15.0, rel=1e-12)


def test_projection_no_crossing():
    with pytest.raises(NoCrossing):
        projection_year(ExpFit(0.5, -0.1, 1990.0, 1.0, 0.0, 1), 2.0)
    with pytest.raises(NoCrossing):
        projection_year(ExpFit(0.5, 0.1, 1990.0, 1.0, 0.0, 1), 0.0)


@given(st.floats(0.1, 3), st.floats(0.02, 0.3), st.integers(-10, 10))
def test_fit_invariant_to_reference_year(a, b, shift):
    series = exact_series(a, b)
    default = fit_exponential(series)
    shifted = fit_exponential(series, t0=1990 + shift)
    np.testing.assert_allclose(shifted.predict(YEARS), default.predict(YEARS), rtol=1e-9)


def test_annual_csv_parse():
    wind, total = parse_annual_csv(data_path("annual_noiseless.csv"))
    assert wind.years == tuple(YEARS)
    pct = penetration_series(wind, total)
    np.testing.assert_allclose(pct.values, exact_series().values, rtol=1e-12)
