"""CSV ingestion and validation for hourly wind and demand data.

Wind files carry one timestamp column and one column per tower::

    timestamp,tower_a,tower_b
    2010-03-01T00:00,7.31,6.02

Demand files carry 24 hour-of-day rows and one column per sector (or a
single ``total`` column), in GWh consumed during that hour.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta
from pathlib import Path

import numpy as np

from .errors import (
    DuplicateTimestamp,
    GapInSeries,
    InvalidParameter,
    MissingColumn,
    NegativeOrNonFiniteValue,
    WrongRowCount,
)

HOUR = timedelta(hours=1)
TIMESTAMP_FORMAT = "%Y-%m-%dT%H:00"
SECTOR_NAMES = ("residential", "commercial", "industrial_agricultural")


class Unit(str, enum.Enum):
    METERS_PER_SECOND = "m/s"
    GIGAWATT_HOURS = "GWh"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HourlySeries:
    """Gap-free hourly samples starting at ``start`` (naive local time)."""

    start: datetime
    values: np.ndarray
    unit: Unit = Unit.METERS_PER_SECOND

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1 or values.size == 0:
            raise InvalidParameter("HourlySeries needs a non-empty 1-D sample vector")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            bad = int(np.flatnonzero(~np.isfinite(values) | (values < 0))[0])
            raise NegativeOrNonFiniteValue(bad, float(values[bad]))
        if self.start.minute or self.start.second or self.start.microsecond:
            raise InvalidParameter("series start must fall on a whole hour")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "unit", Unit(self.unit))

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, HourlySeries):
            return NotImplemented
        return (
            self.start == other.start
            and self.unit == other.unit
            and np.array_equal(self.values, other.values)
        )

    @property
    def timestamps(self) -> list[datetime]:
        return [self.start + i * HOUR for i in range(len(self))]

    @property
    def hours_of_day(self) -> np.ndarray:
        return (self.start.hour + np.arange(len(self))) % 24

    def with_values(self, values, unit: Unit | None = None) -> "HourlySeries":
        return HourlySeries(self.start, values, self.unit if unit is None else unit)


@dataclass(frozen=True, eq=False)
class DemandProfile:
    """Hour-of-day demand shape, GWh consumed in each hour 0..23."""

    slots: np.ndarray
    sectors: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        slots = _frozen(self.slots)
        if slots.shape != (24,):
            raise WrongRowCount(f"demand profile needs 24 slots, got {slots.size}")
        if not np.all(np.isfinite(slots)) or np.any(slots < 0):
            bad = int(np.flatnonzero(~np.isfinite(slots) | (slots < 0))[0])
            raise NegativeOrNonFiniteValue(bad, float(slots[bad]))
        if not np.any(slots > 0):
            raise InvalidParameter("demand profile must have at least one positive slot")
        sectors = {name: _frozen(v) for name, v in self.sectors.items()}
        if sectors:
            total = np.sum(list(sectors.values()), axis=0)
            if np.max(np.abs(total - slots)) > 1e-9:
                raise InvalidParameter("sector profiles do not sum to the total profile")
        object.__setattr__(self, "slots", slots)
        object.__setattr__(self, "sectors", sectors)

    @classmethod
    def from_sectors(cls, sectors: dict[str, np.ndarray]) -> "DemandProfile":
        arrays = {name: np.asarray(v, dtype=float) for name, v in sectors.items()}
        return cls(np.sum(list(arrays.values()), axis=0), arrays)

    @property
    def daily_total(self) -> float:
        return float(self.slots.sum())


@dataclass(frozen=True, eq=False)
class DailyProfileSet:
    """Complete calendar days cut out of an hourly series.

    ``leading`` and ``trailing`` hold the samples of partial days at either
    end, so ``leading + concat(values) + trailing`` is the original series.
    """

    dates: tuple[date, ...]
    values: np.ndarray
    leading: np.ndarray
    trailing: np.ndarray

    def __len__(self) -> int:
        return len(self.dates)

    @property
    def leftover_hours(self) -> int:
        return self.leading.size + self.trailing.size


def _parse_timestamp(text: str, row: int) -> datetime:
    try:
        ts = datetime.fromisoformat(text.strip())
    except ValueError as exc:
        raise InvalidParameter(f"row {row}: bad timestamp {text!r}") from exc
    if ts.tzinfo is not None:
        ts = ts.replace(tzinfo=None)
    if ts.minute or ts.second or ts.microsecond:
        raise InvalidParameter(f"row {row}: timestamp {text!r} is not on the hour")
    return ts


def _parse_value(text: str, row: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise NegativeOrNonFiniteValue(row, text) from None
    if not math.isfinite(value) or value < 0:
        raise NegativeOrNonFiniteValue(row, text)
    return value


def _read_rows(path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise MissingColumn(f"{path}: empty file") from None
        rows = [(reader.line_num, r) for r in reader if r and any(c.strip() for c in r)]
    return header, rows


def wind_columns(path) -> list[str]:
    """Tower identifiers named in a wind CSV header."""
    header, _ = _read_rows(path)
    if not header or header[0] != "timestamp":
        raise MissingColumn(f"{path}: first column must be 'timestamp'")
    return header[1:]


def parse_wind_csv(path, column: str | None = None) -> HourlySeries:
    """Read one tower's hourly wind speeds (m/s).

    Rows may appear in any order; they are sorted by timestamp before the
    gap check. ``column`` defaults to the first tower in the header.
    """
    header, rows = _read_rows(path)
    if not header or header[0] != "timestamp":
        raise MissingColumn(f"{path}: first column must be 'timestamp'")
    if column is None:
        if len(header) < 2:
            raise MissingColumn(f"{path}: no tower columns")
        column = header[1]
    if column not in header[1:]:
        raise MissingColumn(f"{path}: no column named {column!r}")
    col = header.index(column)
    if not rows:
        raise WrongRowCount(f"{path}: no data rows")

    records = []
    for line, row in rows:
        if len(row) <= col:
            raise NegativeOrNonFiniteValue(line, "")
        records.append((_parse_timestamp(row[0], line), _parse_value(row[col], line), line))
    records.sort(key=lambda r: (r[0], r[2]))

    for (prev, _, _), (ts, _, line) in zip(records, records[1:]):
        if ts == prev:
            raise DuplicateTimestamp(line, ts)
        if ts - prev != HOUR:
            raise GapInSeries(prev + HOUR)
    return HourlySeries(records[0][0], [r[1] for r in records], Unit.METERS_PER_SECOND)


def write_wind_csv(path, towers: dict[str, HourlySeries]) -> None:
    """Write one or more aligned series in the wind CSV layout.

    Values are written with ``repr`` so a re-parse is bit-exact.
    """
    names = list(towers)
    series = [towers[n] for n in names]
    first = series[0]
    for s in series[1:]:
        if s.start != first.start or len(s) != len(first):
            raise InvalidParameter("towers written to one file must share timestamps")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["timestamp", *names])
        for i, ts in enumerate(first.timestamps):
            writer.writerow([ts.strftime(TIMESTAMP_FORMAT), *(repr(float(s.values[i])) for s in series)])


def parse_demand_csv(path) -> DemandProfile:
    """Read a 24-row hour-of-day demand profile.

    Columns other than ``hour`` are sectors; their slot-wise sum is the
    total. A lone ``total`` column yields a profile without sectors.
    """
    header, rows = _read_rows(path)
    if not header or header[0] != "hour":
        raise MissingColumn(f"{path}: first column must be 'hour'")
    names = header[1:]
    if not names:
        raise MissingColumn(f"{path}: no demand columns")
    if len(rows) != 24:
        raise WrongRowCount(f"{path}: expected 24 hour rows, got {len(rows)}")

    table = np.zeros((24, len(names)))
    seen = set()
    for line, row in rows:
        try:
            hour = int(row[0])
        except ValueError:
            raise InvalidParameter(f"row {line}: bad hour {row[0]!r}") from None
        if not 0 <= hour <= 23 or hour in seen:
            raise WrongRowCount(f"row {line}: hour {hour} out of range or repeated")
        seen.add(hour)
        if len(row) < len(header):
            raise NegativeOrNonFiniteValue(line, "")
        table[hour] = [_parse_value(row[j + 1], line) for j in range(len(names))]

    if names == ["total"]:
        return DemandProfile(table[:, 0])
    return DemandProfile.from_sectors({name: table[:, j] for j, name in enumerate(names)})


def write_demand_csv(path, demand: DemandProfile) -> None:
    columns = demand.sectors or {"total": demand.slots}
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["hour", *columns])
        for h in range(24):
            writer.writerow([h, *(repr(float(v[h])) for v in columns.values())])


def split_days(series) -> DailyProfileSet:
    """Cut a gap-free series into complete 00:00-23:00 days.

    Accepts an :class:`HourlySeries` or anything with ``start`` and
    ``values`` attributes. Partial days at either end are kept aside.
    """
    values = np.asarray(series.values, dtype=float)
    lead = (24 - series.start.hour) % 24
    lead = min(lead, values.size)
    n_days = (values.size - lead) // 24
    body_end = lead + 24 * n_days
    first_day = (series.start + lead * HOUR).date()
    days = values[lead:body_end].reshape(n_days, 24).copy()
    days.setflags(write=False)
    return DailyProfileSet(
        dates=tuple(first_day + timedelta(days=i) for i in range(n_days)),
        values=days,
        leading=values[:lead].copy(),
        trailing=values[body_end:].copy(),
    )
