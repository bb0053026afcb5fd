import numpy as np
import pytest

from windrisk.clusters import cluster_profile
from windrisk.errors import InvalidParameter
from windrisk.ingest import parse_demand_csv, parse_wind_csv
from windrisk.power import ConversionParams, calibrate_scaling, speed_to_energy
from windrisk.scenario import build_scenario, critical_threshold, hourly_balance
from windrisk.sweep import CSV_HEADER, SweepGrid, first_critical, run_sweep, sweep_csv

PS = tuple(round(0.01 * i, 2) for i in range(1, 16))


@pytest.fixture(scope="module")
def basis():
    from windrisk.fixtures import data_path

    s = parse_wind_csv(data_path("wind.csv"))
    d = parse_demand_csv(data_path("demand.csv"))
    return speed_to_energy(s, ConversionParams(calibrate_scaling(s, d))), d


def test_grid_validation():
    with pytest.raises(InvalidParameter):
        SweepGrid((), (5.0,))
    with pytest.raises(InvalidParameter):
        SweepGrid((0.0,), (5.0,))
    with pytest.raises(InvalidParameter):
        SweepGrid((0.1,), (-1.0,))


def test_single_point_matches_direct_computation(basis):
    energy, demand = basis
    (row,) = run_sweep(energy, demand, SweepGrid((0.15,), (5.0,)))
    balance = hourly_balance(build_scenario(energy, demand, 0.15, 5.0))
    assert row.max_deficit == balance.deficit.max()
    assert row.exceedance_hours == int(np.sum(balance.deficit > 5.0))
    assert row.clusters == cluster_profile(balance, 5.0, 15)
    assert row.critical == (balance.deficit.max() > 5.0)


def test_row_order_and_monotonicity(basis):
    rows = run_sweep(*basis, SweepGrid(PS, (2.5, 5.0)))
    assert [(r.penetration, r.reserve) for r in rows] == [(p, r) for p in PS for r in (2.5, 5.0)]
    for reserve in (2.5, 5.0):
        worst = [r.max_deficit for r in rows if r.reserve == reserve]
        assert all(b >= a for a, b in zip(worst, worst[1:]))
        assert all(r.critical == (r.max_deficit > reserve) for r in rows if r.reserve == reserve)


@pytest.mark.parametrize("reserve", [2.5, 5.0])
def test_first_critical_agrees_with_threshold(basis, reserve):
    energy, demand = basis
    rows = run_sweep(energy, demand, SweepGrid(PS, (reserve,)))
    p_star = critical_threshold(energy, demand, reserve)
    first = first_critical(rows, reserve)
    assert first - 0.01 <= p_star < first
    for r in rows:
        assert r.critical == (r.penetration > p_star)


def test_no_critical_row():
    assert first_critical([], 5.0) is None


def test_csv_is_deterministic_and_parallel_safe(basis):
    grid = SweepGrid(PS, (2.5, 5.0))
    sequential = sweep_csv(run_sweep(*basis, grid))
    assert sweep_csv(run_sweep(*basis, grid)) == sequential
    assert sweep_csv(run_sweep(*basis, grid, workers=4)) == sequential
    lines = sequential.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + 2 * len(PS)
    assert lines[-1].endswith(",true") and lines[1].startswith("0.0100,2.5000,")
