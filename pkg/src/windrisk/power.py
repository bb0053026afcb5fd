"""Wind speed to dispatchable energy conversion.

Energy is linear in speed inside the admissible band and zero outside it:
``e(h) = k * s(h)`` when ``cut_in <= s(h) <= cut_out``. Both band edges
produce energy. The scaling factor ``k`` is calibrated so that mean daily
production over the calibration window equals the daily demand total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime
from typing import Sequence

import numpy as np

from .errors import AllZeroWeights, InvalidParameter, LengthMismatch, NoAdmissibleWind
from .ingest import HOUR, DemandProfile, HourlySeries, Unit

DEFAULT_CUT_IN = 4.0
DEFAULT_CUT_OUT = 25.0


@dataclass(frozen=True)
class ConversionParams:
    k: float
    cut_in: float = DEFAULT_CUT_IN
    cut_out: float = DEFAULT_CUT_OUT

    def __post_init__(self):
        check_band(self.cut_in, self.cut_out)
        if not (math.isfinite(self.k) and self.k > 0):
            raise InvalidParameter(f"scaling factor must be positive and finite, got {self.k}")


def check_band(cut_in: float, cut_out: float) -> None:
    if not (math.isfinite(cut_in) and math.isfinite(cut_out) and 0 < cut_in < cut_out):
        raise InvalidParameter(f"need 0 < cut_in < cut_out, got {cut_in}, {cut_out}")


def admissible(speeds: np.ndarray, cut_in: float, cut_out: float) -> np.ndarray:
    """Boolean mask of hours whose speed lies inside the inclusive band."""
    speeds = np.asarray(speeds, dtype=float)
    return (speeds >= cut_in) & (speeds <= cut_out)


def speed_to_energy(speeds: HourlySeries, params: ConversionParams) -> HourlySeries:
    mask = admissible(speeds.values, params.cut_in, params.cut_out)
    return speeds.with_values(np.where(mask, params.k * speeds.values, 0.0), Unit.GIGAWATT_HOURS)


def _window(speeds: HourlySeries, start: datetime | None, end: datetime | None) -> np.ndarray:
    # end is exclusive
    i0 = 0 if start is None else max(0, int((start - speeds.start) / HOUR))
    i1 = len(speeds) if end is None else min(len(speeds), int((end - speeds.start) / HOUR))
    return speeds.values[i0:i1]


def calibrate_scaling(
    speeds: HourlySeries,
    demand: DemandProfile,
    cut_in: float = DEFAULT_CUT_IN,
    cut_out: float = DEFAULT_CUT_OUT,
    start: datetime | None = None,
    end: datetime | None = None,
) -> float:
    """Scaling factor ``k`` matching mean daily production to daily demand.

    ``k = days * sum(D) / sum(admissible s)`` with ``days = hours / 24`` over
    the calibration window ``[start, end)`` (default: the whole series).
    """
    check_band(cut_in, cut_out)
    window = _window(speeds, start, end)
    if window.size < 24:
        raise InvalidParameter("calibration window must cover at least one full day")
    usable = window[admissible(window, cut_in, cut_out)].sum()
    if usable <= 0:
        raise NoAdmissibleWind(f"no hour in the calibration window lies within [{cut_in}, {cut_out}] m/s")
    days = window.size / 24
    return float(days * demand.daily_total / usable)


def no_wind_fraction(speeds: HourlySeries, cut_in: float = DEFAULT_CUT_IN, cut_out: float = DEFAULT_CUT_OUT):
    """Return ``(count, fraction)`` of hours that produce no energy."""
    count = int(np.count_nonzero(~admissible(speeds.values, cut_in, cut_out)))
    return count, count / len(speeds)


def aggregate_sites(sites: Sequence[HourlySeries], weights: Sequence[float] | None = None) -> HourlySeries:
    """Weighted sum of aligned per-site energy series.

    With strictly positive weights the aggregate is zero exactly where every
    site is zero, so adding dispersed sites can only shrink the outage set.
    """
    if not sites:
        raise LengthMismatch("need at least one site")
    if weights is None:
        weights = [1.0] * len(sites)
    w = np.asarray(weights, dtype=float)
    if w.size != len(sites):
        raise LengthMismatch(f"{len(sites)} sites but {w.size} weights")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise InvalidParameter("weights must be finite and non-negative")
    if not np.any(w > 0):
        raise AllZeroWeights("at least one weight must be positive")
    first = sites[0]
    for s in sites[1:]:
        if len(s) != len(first) or s.start != first.start:
            raise LengthMismatch("sites must share start time and length")
    total = np.zeros(len(first))
    for wi, s in zip(w, sites):
        total += wi * s.values
    return first.with_values(total, Unit.GIGAWATT_HOURS)
