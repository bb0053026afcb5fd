"""Tukey boxplot summaries.

Quartiles are Tukey hinges: the medians of the lower and upper halves of the
sorted sample, each half including the overall median when the sample size
is odd. Whiskers reach the most extreme samples inside the 1.5 IQR fences;
anything beyond the fences is an outlier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyDistribution

CONVENTION = "tukey-hinges-1.5iqr"
WHISKER_IQR = 1.5


def _median_sorted(x: np.ndarray) -> float:
    n = x.size
    mid = n // 2
    if n % 2:
        return float(x[mid])
    return float((x[mid - 1] + x[mid]) / 2)


def tukey_hinges(sorted_values: np.ndarray) -> tuple[float, float, float]:
    x = sorted_values
    n = x.size
    half = (n + 1) // 2
    return _median_sorted(x[:half]), _median_sorted(x), _median_sorted(x[n - half:])


@dataclass(frozen=True)
class BoxplotSummary:
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    lower_whisker: float
    upper_whisker: float
    outliers: tuple[float, ...]
    count: int

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1

    def as_dict(self) -> dict:
        return {
            "min": self.minimum,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
            "max": self.maximum,
            "lower_whisker": self.lower_whisker,
            "upper_whisker": self.upper_whisker,
            "outliers": list(self.outliers),
            "n": self.count,
        }


def summarize(values) -> BoxplotSummary:
    x = np.sort(np.asarray(values, dtype=float).ravel())
    if x.size == 0:
        raise EmptyDistribution("cannot summarize an empty sample")
    q1, med, q3 = tukey_hinges(x)
    iqr = q3 - q1
    lo_fence = q1 - WHISKER_IQR * iqr
    hi_fence = q3 + WHISKER_IQR * iqr
    inside = x[(x >= lo_fence) & (x <= hi_fence)]
    outliers = x[(x < lo_fence) | (x > hi_fence)]
    return BoxplotSummary(
        minimum=float(x[0]),
        q1=q1,
        median=med,
        q3=q3,
        maximum=float(x[-1]),
        lower_whisker=float(inside[0]),
        upper_whisker=float(inside[-1]),
        outliers=tuple(float(v) for v in outliers),
        count=int(x.size),
    )
