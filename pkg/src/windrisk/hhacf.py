"""Hour-to-hour autocorrelation of daily wind profiles and fleet sizing.

Each 24-hour day yields one coefficient per lag: the Pearson correlation of
``x[0:24-lag]`` with ``x[lag:24]``. The spread of those per-day coefficients
bounds how far ahead hourly wind can be anticipated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boxplot import BoxplotSummary, summarize
from .errors import AllDaysDegenerate, EmptyDistribution, InsufficientDays, InvalidParameter, ZeroVariance
from .ingest import DailyProfileSet

MAX_LAG = 22
LAG_CLASSES = (1, 2, 3)


def autocorr(profile, lag: int) -> float:
    x = np.asarray(profile, dtype=float)
    if x.shape != (24,):
        raise InvalidParameter("autocorrelation needs a 24-sample day")
    if not 0 <= lag <= MAX_LAG:
        raise InvalidParameter(f"lag must lie in 0..{MAX_LAG}, got {lag}")
    a = x[: 24 - lag]
    b = x[lag:]
    if np.ptp(a) == 0 or np.ptp(b) == 0:
        raise ZeroVariance(f"constant subsequence at lag {lag}")
    da = a - a.mean()
    db = b - b.mean()
    # separate roots keep the product from underflowing for tiny spreads
    denom = math.sqrt(float(np.dot(da, da))) * math.sqrt(float(np.dot(db, db)))
    if denom == 0.0:
        raise ZeroVariance(f"variance underflows at lag {lag}")
    r = float(np.dot(da, db)) / denom
    return min(1.0, max(-1.0, r))


@dataclass(frozen=True)
class LagDistribution:
    lag: int
    coefficients: tuple[float, ...]
    skipped: int
    summary: BoxplotSummary


def hhacf_distribution(days, max_lag: int = 6) -> list[LagDistribution]:
    """Per-lag distributions of daily autocorrelation coefficients.

    Days whose overlapped subsequences are constant at a given lag are
    skipped for that lag and counted in ``skipped``.
    """
    matrix = np.asarray(days.values if isinstance(days, DailyProfileSet) else days, dtype=float)
    if matrix.ndim != 2 or matrix.shape[1] != 24:
        raise InvalidParameter("days must be an (n_days, 24) array")
    if matrix.shape[0] < 2:
        raise InsufficientDays(f"need at least 2 days, got {matrix.shape[0]}")
    if not 1 <= max_lag <= MAX_LAG:
        raise InvalidParameter(f"max_lag must lie in 1..{MAX_LAG}, got {max_lag}")

    out = []
    for lag in range(1, max_lag + 1):
        coeffs = []
        for day in matrix:
            try:
                coeffs.append(autocorr(day, lag))
            except ZeroVariance:
                pass
        if not coeffs:
            raise AllDaysDegenerate(f"every day is constant at lag {lag}")
        out.append(LagDistribution(lag, tuple(coeffs), matrix.shape[0] - len(coeffs), summarize(coeffs)))
    return out


def lag_uncertainty(dist: LagDistribution, confidence: float = 0.95, include_outliers: bool = False) -> float:
    """Forecast uncertainty in percent, ``(1 - rho_low) * 100``.

    ``rho_low`` is the lower two-sided percentile of the coefficients at
    ``confidence`` (linear interpolation between order statistics), or the
    sample minimum when ``include_outliers`` is set.
    """
    coeffs = np.asarray(dist.coefficients, dtype=float)
    if coeffs.size == 0:
        raise EmptyDistribution(f"no coefficients at lag {dist.lag}")
    if not 0 < confidence < 1:
        raise InvalidParameter(f"confidence must lie in (0, 1), got {confidence}")
    if include_outliers:
        rho_low = float(coeffs.min())
    else:
        rho_low = float(np.percentile(coeffs, 50 * (1 - confidence), method="linear"))
    return uncertainty_from_rho(rho_low)


def uncertainty_from_rho(rho_low: float) -> float:
    return (1.0 - rho_low) * 100.0


@dataclass(frozen=True)
class FleetClass:
    lag: int
    worst_deficit: float
    nameplate: float
    fast_fraction: float
    plants: int


@dataclass(frozen=True)
class FleetPlan:
    classes: tuple[FleetClass, ...]

    @property
    def total_plants(self) -> int:
        return sum(c.plants for c in self.classes)


def plant_count(deficit: float, nameplate: float, fast_fraction: float) -> int:
    """Plants needed so that their fast-response output covers ``deficit`` in one hour."""
    if not (math.isfinite(nameplate) and nameplate > 0):
        raise InvalidParameter(f"nameplate must be positive, got {nameplate}")
    if not 0 < fast_fraction <= 1:
        raise InvalidParameter(f"fast-response fraction must lie in (0, 1], got {fast_fraction}")
    if not (math.isfinite(deficit) and deficit >= 0):
        raise InvalidParameter(f"deficit must be finite and >= 0, got {deficit}")
    ratio = deficit / (nameplate * fast_fraction)
    count = math.ceil(ratio)
    # 2 / (0.25 * 0.2) lands a hair above 40.0 in binary floating point
    if count > 0 and math.isclose(ratio, count - 1, rel_tol=1e-12, abs_tol=0.0):
        count -= 1
    return count


def size_compensation_fleet(worst_deficit, nameplate: float = 0.25, fast_fraction: float = 1.0) -> FleetPlan:
    """Size a compensation fleet for each lag class.

    ``worst_deficit`` is either a single GWh value applied to every class in
    :data:`LAG_CLASSES` or a ``{lag: GWh}`` mapping.
    """
    if not isinstance(worst_deficit, dict):
        worst_deficit = {lag: float(worst_deficit) for lag in LAG_CLASSES}
    classes = tuple(
        FleetClass(lag, float(d), nameplate, fast_fraction, plant_count(float(d), nameplate, fast_fraction))
        for lag, d in sorted(worst_deficit.items())
    )
    return FleetPlan(classes)
