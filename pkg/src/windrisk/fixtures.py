"""Synthetic bundled datasets.

The files under ``windrisk/data`` are produced by :func:`write_all` from a
fixed seed. They are self-contained synthetic sets, not reconstructions of
any measured tower or utility data. Their anchors:

* ``wind.csv``: 15 days (360 h) from 2010-03-01; ``tower_a`` has exactly 26
  hours outside the 4-25 m/s band, two of them at 16:00 and 17:00 on the
  same day.
* ``demand.csv``: three-sector profile peaking at 16:00 and 17:00 with a
  total of ``14.23 / 0.15`` GWh, so a 15% scenario on ``tower_a`` has a
  largest hourly deficit of 14.23 GWh.
* ``annual_noiseless.csv``: penetration exactly ``0.5 exp(0.2 (t - 1990))``.
* ``annual_noisy.csv``: the same curve with multiplicative noise.

Regenerate with ``python -m windrisk.fixtures [DIR]``.
"""

from __future__ import annotations

import sys
from datetime import datetime
from importlib import resources
from pathlib import Path

import numpy as np

from .ingest import DemandProfile, HourlySeries, Unit, write_demand_csv, write_wind_csv

SEED = 20100301
START = datetime(2010, 3, 1)
DAYS = 15
HOURS = 24 * DAYS
NO_WIND_HOURS = 26
PEAK_DEFICIT = 14.23
REFERENCE_P = 0.15
PEAK_HOURS = (16, 17)

FILES = ("wind.csv", "demand.csv", "annual_noiseless.csv", "annual_noisy.csv", "wind_gapped.csv")


def data_path(name: str) -> Path:
    return Path(str(resources.files("windrisk") / "data" / name))


def _diurnal_speeds(rng: np.random.Generator, phase: float) -> np.ndarray:
    t = np.arange(HOURS)
    base = 11.0 + 3.5 * np.cos(2 * np.pi * (t - phase) / 24)
    noise = np.zeros(HOURS)
    for i in range(1, HOURS):
        noise[i] = 0.9 * noise[i - 1] + rng.normal(0.0, 0.8)
    day_level = np.repeat(rng.uniform(-2.0, 2.0, DAYS), 24)
    return np.clip(base + noise + day_level, 4.6, 22.5)


def _events(rng: np.random.Generator, calms: list[tuple[int, int]]) -> list[tuple[int, int, str]]:
    """Out-of-band stretches as ``(start, length, kind)``; 26 hours in total."""
    events = [(9 * 24 + PEAK_HOURS[0], len(PEAK_HOURS), "calm")]
    events += [(start, length, "calm") for start, length in calms]
    events.append((7 * 24 + 1 + int(rng.integers(0, 4)), 3, "storm"))
    used = sum(length for _, length, _ in events)
    while used < NO_WIND_HOURS:
        h = int(rng.integers(3, HOURS - 3))
        if all(h + 3 < s or h - 3 >= s + n for s, n, _ in events):
            events.append((h, 1, "calm"))
            used += 1
    return sorted(events)


def _apply_events(speeds: np.ndarray, rng: np.random.Generator, events) -> np.ndarray:
    out_of_band = set()
    for start, length, _ in events:
        out_of_band.update(range(start, start + length))
    for start, length, kind in events:
        if kind == "storm":
            core = np.sort(rng.uniform(25.5, 28.5, length))[[0, 2, 1]] if length == 3 else rng.uniform(25.5, 28.5, length)
            shoulder = (rng.uniform(20.0, 22.0), rng.uniform(16.0, 19.0))
        else:
            core = rng.uniform(0.6, 3.6, length)
            shoulder = (rng.uniform(4.6, 5.8), rng.uniform(5.8, 7.5))
        speeds[start:start + length] = core
        # ramp the neighbouring hours toward the event so the day stays smooth
        for offset, value in enumerate(shoulder, start=1):
            for h in (start - offset, start + length - 1 + offset):
                if 0 <= h < HOURS and h not in out_of_band:
                    speeds[h] = value
    return np.round(speeds, 2)


def wind_towers() -> dict[str, HourlySeries]:
    rng = np.random.default_rng(SEED)
    calm_sets = {
        # a two-hour calm across the demand peak on day 9 is added to both
        "tower_a": [(2 * 24 + 3, 5), (4 * 24 + 11, 3), (11 * 24 + 6, 6), (13 * 24 + 14, 2)],
        "tower_b": [(2 * 24 + 5, 4), (5 * 24 + 20, 5), (11 * 24 + 9, 5), (14 * 24 + 2, 3)],
    }
    towers = {}
    for name, phase in (("tower_a", 3.0), ("tower_b", 6.0)):
        speeds = _diurnal_speeds(rng, phase)
        speeds = _apply_events(speeds, rng, _events(rng, calm_sets[name]))
        towers[name] = HourlySeries(START, speeds, Unit.METERS_PER_SECOND)
    return towers


def demand_profile() -> DemandProfile:
    h = np.arange(24)
    peak = PEAK_DEFICIT / REFERENCE_P
    shape = 0.62 + 0.38 * np.exp(-0.5 * ((h - 16.5) / 4.2) ** 2)
    shape[list(PEAK_HOURS)] = 1.0
    shape = np.minimum(shape, 1.0)
    total = np.round(peak * shape, 4)
    total[list(PEAK_HOURS)] = peak
    residential = np.round(total * (0.30 + 0.08 * np.sin(2 * np.pi * (h - 14) / 24)), 4)
    commercial = np.round(total * (0.38 + 0.06 * np.cos(2 * np.pi * (h - 13) / 24)), 4)
    industrial = np.round(total - residential - commercial, 4)
    peak_slots = list(PEAK_HOURS)
    industrial[peak_slots] = total[peak_slots] - residential[peak_slots] - commercial[peak_slots]
    return DemandProfile.from_sectors({
        "residential": residential,
        "commercial": commercial,
        "industrial_agricultural": industrial,
    })


def annual_rows(noisy: bool) -> list[tuple[int, float, float]]:
    years = np.arange(1990, 2009)
    tau = years - 1990.0
    total = np.round(250000.0 * 1.02 ** tau, 1)
    share = 0.5 * np.exp(0.2 * tau)
    if noisy:
        share = share * np.exp(np.random.default_rng(SEED + 1).normal(0.0, 0.12, years.size))
    wind = total * share / 100.0
    return [(int(y), float(w), float(t)) for y, w, t in zip(years, wind, total)]


def _write_annual(path: Path, rows) -> None:
    with open(path, "w") as fh:
        fh.write("year,wind_gwh,total_gwh\n")
        for y, w, t in rows:
            fh.write(f"{y},{w!r},{t!r}\n")


def write_all(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    towers = wind_towers()
    write_wind_csv(directory / "wind.csv", towers)
    write_demand_csv(directory / "demand.csv", demand_profile())
    _write_annual(directory / "annual_noiseless.csv", annual_rows(noisy=False))
    _write_annual(directory / "annual_noisy.csv", annual_rows(noisy=True))

    gapped = directory / "wind_gapped.csv"
    lines = (directory / "wind.csv").read_text().splitlines(keepends=True)
    gapped.write_text("".join(line for line in lines if not line.startswith("2010-03-03T07:00")))
    return [directory / name for name in FILES]


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data"
    for path in write_all(target):
        print(path)
