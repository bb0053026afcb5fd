"""Exponential growth fit of wind penetration by year.

The model is ``y(t) = a * exp(b * (t - t0))`` fitted by least squares in the
original (not log) space. A log-linear regression seeds a damped
Gauss-Newton refinement; the refined fit never has a larger residual sum
than the seed.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParameter,
    MissingColumn,
    NoCrossing,
    NonPositiveValue,
    SingularFit,
    YearMismatch,
    ZeroTotal,
)

log = logging.getLogger(__name__)

GRAD_TOL = 1e-10
MAX_ITER = 200


@dataclass(frozen=True, eq=False)
class AnnualSeries:
    years: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        years = tuple(int(y) for y in self.years)
        values = np.array(self.values, dtype=float)
        if len(years) != values.size:
            raise InvalidParameter("years and values differ in length")
        if any(b <= a for a, b in zip(years, years[1:])):
            raise InvalidParameter("years must be strictly increasing")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise NonPositiveValue("annual values must be finite and non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.years)


def parse_annual_csv(path) -> tuple[AnnualSeries, AnnualSeries]:
    """Read ``year,wind_gwh,total_gwh`` rows into (wind, total) series."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        need = {"year", "wind_gwh", "total_gwh"}
        if reader.fieldnames is None or not need <= {f.strip() for f in reader.fieldnames}:
            raise MissingColumn(f"{path}: header must contain year,wind_gwh,total_gwh")
        rows = sorted(
            ((int(r["year"]), float(r["wind_gwh"]), float(r["total_gwh"])) for r in reader),
            key=lambda r: r[0],
        )
    years = [r[0] for r in rows]
    return AnnualSeries(years, [r[1] for r in rows]), AnnualSeries(years, [r[2] for r in rows])


def penetration_series(wind: AnnualSeries, total: AnnualSeries) -> AnnualSeries:
    """Wind share of total generation, in percent."""
    if wind.years != total.years:
        raise YearMismatch("wind and total series cover different years")
    if np.any(total.values <= 0):
        year = total.years[int(np.flatnonzero(total.values <= 0)[0])]
        raise ZeroTotal(f"total generation is zero in {year}")
    return AnnualSeries(wind.years, 100.0 * wind.values / total.values)


@dataclass(frozen=True)
class ExpFit:
    a: float
    b: float
    t0: float
    r2: float
    sse: float
    iterations: int
    converged: bool = True
    degenerate: bool = False

    def predict(self, t):
        return self.a * np.exp(self.b * (np.asarray(t, dtype=float) - self.t0))


def _sse(a: float, b: float, tau: np.ndarray, y: np.ndarray) -> float:
    r = y - a * np.exp(b * tau)
    return float(r @ r)


def _r_squared(sse: float, y: np.ndarray) -> tuple[float, bool]:
    sst = float(np.sum((y - y.mean()) ** 2))
    if sst == 0.0:
        # residuals at rounding level count as an exact fit
        exact = sse <= 1e-24 * float(y @ y)
        return (1.0 if exact else 0.0), True
    return 1.0 - sse / sst, False


def fit_exponential(series: AnnualSeries, t0: float | None = None) -> ExpFit:
    if len(series) < 3:
        raise InvalidParameter("need at least 3 points to fit")
    y = series.values
    if np.any(y <= 0):
        raise NonPositiveValue("exponential fit needs strictly positive values")
    t = np.array(series.years, dtype=float)
    if np.ptp(t) == 0:
        raise SingularFit("all years are equal")
    t0 = float(t[0] if t0 is None else t0)
    tau = t - t0

    slope, intercept = np.polyfit(tau, np.log(y), 1)
    seed = (math.exp(intercept), float(slope))
    a, b = seed
    sse = _sse(a, b, tau, y)
    seed_sse = sse
    converged = False
    it = 0
    for it in range(1, MAX_ITER + 1):
        e = np.exp(b * tau)
        r = y - a * e
        jac = np.column_stack([e, a * tau * e])
        grad = -2.0 * jac.T @ r
        if np.linalg.norm(grad) < GRAD_TOL:
            converged = True
            break
        step, *_ = np.linalg.lstsq(jac, r, rcond=None)
        lam = 1.0
        while lam > 1e-12:
            a_new, b_new = a + lam * step[0], b + lam * step[1]
            if a_new > 0:
                trial = _sse(a_new, b_new, tau, y)
                if trial < sse:
                    break
            lam *= 0.5
        else:
            # no descent left at machine precision: this is the minimum we can resolve
            converged = bool(np.linalg.norm(grad) <= 1e-6 * max(1.0, sse))
            break
        a, b, sse = a_new, b_new, trial

    if not converged or sse > seed_sse:
        if not converged:
            log.warning("Gauss-Newton did not converge in %d iterations; keeping the log-linear seed", it)
        a, b, sse = seed[0], seed[1], seed_sse
    r2, degenerate = _r_squared(sse, y)
    return ExpFit(float(a), float(b), t0, float(r2), float(sse), it, converged, degenerate)


def projection_year(fit: ExpFit, target_percent: float) -> float:
    """Fractional year at which the fitted curve reaches ``target_percent``."""
    if not (math.isfinite(target_percent) and target_percent > 0):
        raise NoCrossing(f"target must be positive, got {target_percent}")
    if fit.b == 0:
        if target_percent == fit.a:
            return fit.t0
        raise NoCrossing("flat fit never reaches the target")
    if fit.b < 0 and target_percent > fit.a:
        raise NoCrossing("declining fit never rises to the target")
    return fit.t0 + math.log(target_percent / fit.a) / fit.b
