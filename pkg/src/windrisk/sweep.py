"""Penetration x reserve sweeps over a calibrated wind basis."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .clusters import ClusterRiskProfile, cluster_profile
from .errors import InvalidParameter
from .ingest import DemandProfile, HourlySeries
from .scenario import build_scenario, check_penetration, check_reserve, hourly_balance, max_deficit

CSV_HEADER = ("p", "reserve_gwh", "max_deficit_gwh", "exceedance_hours", "critical")
LINEARITY_RTOL = 1e-9


class ScalingLinearityError(AssertionError):
    """Independently computed sweep points disagree with linear scaling."""


@dataclass(frozen=True)
class SweepGrid:
    penetrations: tuple[float, ...]
    reserves: tuple[float, ...]
    n_max: int = 15

    def __post_init__(self):
        object.__setattr__(self, "penetrations", tuple(float(p) for p in self.penetrations))
        object.__setattr__(self, "reserves", tuple(float(r) for r in self.reserves))
        if not self.penetrations or not self.reserves:
            raise InvalidParameter("sweep grid needs at least one penetration and one reserve")
        for p in self.penetrations:
            check_penetration(p)
        for r in self.reserves:
            check_reserve(r)
        if self.n_max < 1:
            raise InvalidParameter("n_max must be at least 1")


@dataclass(frozen=True)
class SweepRow:
    penetration: float
    reserve: float
    max_deficit: float
    exceedance_hours: int
    clusters: ClusterRiskProfile
    critical: bool


def _evaluate(wind_basis, demand, p, reserves, n_max):
    balance = hourly_balance(build_scenario(wind_basis, demand, p))
    worst = max_deficit(balance)
    rows = [
        SweepRow(
            penetration=p,
            reserve=r,
            max_deficit=worst,
            exceedance_hours=int(np.count_nonzero(balance.deficit > r)),
            clusters=cluster_profile(balance, r, min(n_max, len(balance))),
            critical=worst > r,
        )
        for r in reserves
    ]
    return balance, rows


def run_sweep(
    wind_basis: HourlySeries,
    demand: DemandProfile,
    grid: SweepGrid,
    workers: int | None = None,
) -> list[SweepRow]:
    """Evaluate every grid point; rows come back p-major, then reserve.

    Each penetration is computed from scratch and then checked against the
    first one under linear scaling, so a broken balance computation fails
    loudly here rather than skewing the table.
    """
    def task(p):
        return _evaluate(wind_basis, demand, p, grid.reserves, grid.n_max)

    if workers is None or workers <= 1:
        results = [task(p) for p in grid.penetrations]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, grid.penetrations))

    p0 = grid.penetrations[0]
    base = results[0][0]
    scale = max(float(base.deficit.max()), float(base.surplus.max()), 1.0)
    rows = []
    for p, (balance, point_rows) in zip(grid.penetrations, results):
        ratio = p / p0
        for name in ("deficit", "surplus"):
            got = getattr(balance, name)
            want = ratio * getattr(base, name)
            if not np.allclose(got, want, rtol=LINEARITY_RTOL, atol=1e-12 * scale * max(ratio, 1.0)):
                raise ScalingLinearityError(f"{name} at p={p} is not {ratio:g} x the p={p0} result")
        rows.extend(point_rows)
    return rows


def first_critical(rows: list[SweepRow], reserve: float) -> float | None:
    return min((row.penetration for row in rows if row.reserve == reserve and row.critical), default=None)


def sweep_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([
            f"{row.penetration:.4f}",
            f"{row.reserve:.4f}",
            f"{row.max_deficit:.4f}",
            row.exceedance_hours,
            str(row.critical).lower(),
        ])
    return buf.getvalue()


def write_sweep_csv(path, rows: list[SweepRow]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(sweep_csv(rows))
