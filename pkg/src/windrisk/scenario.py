"""Penetration scenarios: hourly balance, hour-of-day distributions, reserve checks.

A scenario scales both the calibrated wind basis and the tiled demand profile
by the penetration fraction ``p``. Because both sides scale by the same
factor, deficits and surpluses are linear in ``p``; the critical threshold
below relies on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime

import numpy as np

from .boxplot import BoxplotSummary, summarize
from .errors import InsufficientDays, InvalidParameter, NoDeficitAtReference
from .ingest import DailyProfileSet, DemandProfile, HourlySeries, Unit, split_days


@dataclass(frozen=True, eq=False)
class Scenario:
    penetration: float
    reserve: float
    demand: DemandProfile
    wind_basis: HourlySeries
    day_levels: np.ndarray | None = None

    def __post_init__(self):
        check_penetration(self.penetration)
        check_reserve(self.reserve)
        if self.wind_basis.unit is not Unit.GIGAWATT_HOURS:
            raise InvalidParameter("wind basis must be an energy series (GWh)")
        if self.day_levels is not None:
            levels = np.asarray(self.day_levels, dtype=float)
            if not np.all(np.isfinite(levels)) or np.any(levels <= 0):
                raise InvalidParameter("day levels must be positive and finite")
            object.__setattr__(self, "day_levels", levels)


def check_penetration(p: float) -> None:
    if not (isinstance(p, (int, float)) and math.isfinite(p) and 0 < p <= 1):
        raise InvalidParameter(f"penetration must lie in (0, 1], got {p}")


def check_reserve(r: float) -> None:
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r >= 0):
        raise InvalidParameter(f"reserve must be finite and >= 0, got {r}")


@dataclass(frozen=True, eq=False)
class BalanceSeries:
    """Per-hour generation, target, deficit and surplus in GWh."""

    start: datetime
    generation: np.ndarray
    target: np.ndarray
    deficit: np.ndarray
    surplus: np.ndarray

    def __len__(self) -> int:
        return self.generation.size

    @property
    def hours_of_day(self) -> np.ndarray:
        return (self.start.hour + np.arange(len(self))) % 24

    def field_series(self, name: str) -> HourlySeries:
        return HourlySeries(self.start, getattr(self, name), Unit.GIGAWATT_HOURS)

    def daily(self, name: str = "deficit") -> DailyProfileSet:
        return split_days(self.field_series(name))


def build_scenario(
    wind_energy: HourlySeries,
    demand: DemandProfile,
    penetration: float,
    reserve: float = 0.0,
    day_levels=None,
) -> Scenario:
    return Scenario(penetration, reserve, demand, wind_energy, day_levels)


def tiled_demand(scenario: Scenario) -> np.ndarray:
    """Unscaled demand for every hour of the basis, with optional per-day shift."""
    basis = scenario.wind_basis
    demand = scenario.demand.slots[basis.hours_of_day]
    if scenario.day_levels is not None:
        day_index = (basis.start.hour + np.arange(len(basis))) // 24
        if day_index[-1] >= scenario.day_levels.size:
            raise InvalidParameter("fewer day levels than days in the wind basis")
        demand = demand * scenario.day_levels[day_index]
    return demand


def hourly_balance(scenario: Scenario) -> BalanceSeries:
    p = scenario.penetration
    demand = tiled_demand(scenario)
    basis = scenario.wind_basis.values
    # scale the difference, not the operands, so d_p / d_q == p / q to rounding
    gap = p * (demand - basis)
    target = p * demand
    generation = p * basis
    return BalanceSeries(
        start=scenario.wind_basis.start,
        generation=generation,
        target=target,
        deficit=np.maximum(gap, 0.0),
        surplus=np.maximum(-gap, 0.0),
    )


def _day_matrix(days) -> np.ndarray:
    if isinstance(days, DailyProfileSet):
        return np.asarray(days.values, dtype=float)
    if isinstance(days, BalanceSeries):
        return np.asarray(days.daily("deficit").values, dtype=float)
    rows = [np.asarray(getattr(d, "deficit", d), dtype=float) for d in days]
    matrix = np.array(rows, dtype=float)
    if matrix.ndim != 2 or matrix.shape[1] != 24:
        raise InvalidParameter("each day must hold exactly 24 hourly samples")
    return matrix


def hour_of_day_boxplots(days) -> list[BoxplotSummary]:
    """One boxplot per hour-of-day slot across days.

    ``days`` is a :class:`DailyProfileSet`, a :class:`BalanceSeries` (its
    deficits are split into days), a list of daily balances, or an
    ``(n_days, 24)`` array.
    """
    matrix = _day_matrix(days)
    if matrix.shape[0] < 2:
        raise InsufficientDays(f"need at least 2 days, got {matrix.shape[0]}")
    return [summarize(matrix[:, h]) for h in range(24)]


def reserve_exceedance(balance: BalanceSeries, reserve: float) -> list[tuple[int, float]]:
    """Hours whose deficit exceeds ``reserve``, with the excess over it."""
    check_reserve(reserve)
    hours = np.flatnonzero(balance.deficit > reserve)
    return [(int(h), float(balance.deficit[h] - reserve)) for h in hours]


def max_deficit(balance: BalanceSeries) -> float:
    return float(balance.deficit.max())


def critical_threshold(
    wind_basis: HourlySeries,
    demand: DemandProfile,
    reserve: float,
    reference_p: float = 0.15,
) -> float:
    """Penetration at which the largest hourly deficit equals the reserve.

    Deficits scale as ``d_p = (p / q) d_q``, so the answer is
    ``reference_p * reserve / maxdef(reference_p)``. Outliers are kept in
    the maximum.
    """
    check_reserve(reserve)
    worst = max_deficit(hourly_balance(build_scenario(wind_basis, demand, reference_p, reserve)))
    if worst <= 0:
        raise NoDeficitAtReference(f"no deficit at reference penetration {reference_p}")
    return reference_p * reserve / worst
