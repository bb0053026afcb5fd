"""Independent reference computations used to cross-check the library.

These deliberately avoid numpy and the library's own helpers: plain loops,
sorting, ``fractions`` and ``statistics``.
"""

from __future__ import annotations

import bisect
import itertools
import math
import statistics
from fractions import Fraction


def tukey_oracle(values):
    """Five-number summary by hinge depth (Tukey, EDA ch. 2) plus fences."""
    x = sorted(float(v) for v in values)
    n = len(x)
    depth_med = (n + 1) / 2
    depth_hinge = (math.floor(depth_med) + 1) / 2

    def at_depth(d, from_top=False):
        lo, hi = math.floor(d), math.ceil(d)
        seq = x[::-1] if from_top else x
        return (seq[lo - 1] + seq[hi - 1]) / 2 if lo != hi else seq[lo - 1]

    q1 = at_depth(depth_hinge)
    q3 = at_depth(depth_hinge, from_top=True)
    med = at_depth(depth_med)
    iqr = q3 - q1
    lo_f, hi_f = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inside = [v for v in x if lo_f <= v <= hi_f]
    outliers = [v for v in x if v < lo_f or v > hi_f]
    return {
        "min": x[0], "q1": q1, "median": med, "q3": q3, "max": x[-1],
        "lower_whisker": min(inside), "upper_whisker": max(inside), "outliers": outliers,
    }


def cluster_oracle(bits, n_max):
    """Exact window and run probabilities as Fractions.

    Window hits are counted from the streak of ones starting at every hour,
    found by scanning forward; runs come from ``itertools.groupby``.
    """
    bits = [bool(b) for b in bits]
    T = len(bits)
    streaks = []
    for i in range(T):
        j = i
        while j < T and bits[j]:
            j += 1
        streaks.append(j - i)
    streaks.sort()
    runs = sorted(len(list(g)) for k, g in itertools.groupby(bits) if k)
    window, run = [], []
    for n in range(1, n_max + 1):
        hits = T - bisect.bisect_left(streaks, n)
        window.append(Fraction(hits, T - n + 1))
        run.append(Fraction(len(runs) - bisect.bisect_left(runs, n), max(1, len(runs))))
    return window, run


def pearson_oracle(day, lag):
    a = [float(v) for v in day[: 24 - lag]]
    b = [float(v) for v in day[lag:]]
    return statistics.correlation(a, b)


def calibration_oracle(speeds, demand_slots, cut_in, cut_out):
    usable = 0.0
    for s in speeds:
        if cut_in <= s <= cut_out:
            usable += s
    days = len(speeds) / 24
    return days * sum(demand_slots) / usable


def grid_search_sse(years, values, a0, b0, size=200):
    """Smallest residual sum over a size x size (a, b) grid around a seed."""
    t0 = years[0]
    best = math.inf
    a_grid = [a0 * (0.5 + i / (size - 1)) for i in range(size)]
    b_grid = [b0 + abs(b0) * (-0.5 + j / (size - 1)) for j in range(size)]
    for a in a_grid:
        for b in b_grid:
            sse = 0.0
            for t, y in zip(years, values):
                r = y - a * math.exp(b * (t - t0))
                sse += r * r
            best = min(best, sse)
    return best
