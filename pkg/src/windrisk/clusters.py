"""Contiguous deficit-cluster probabilities.

An hour is a deficit hour when the scaled demand exceeds scaled generation
plus the reserve. Two estimators bracket the probability of an ``n``-hour
cluster:

``window``
    share of the ``T - n + 1`` length-``n`` windows that are all deficit.
``run``
    share of maximal deficit runs that last at least ``n`` hours.

The horizon is not wrapped around.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .scenario import BalanceSeries, check_reserve

ESTIMATORS = {
    "window": "fraction of length-n windows that are entirely deficit hours",
    "run": "fraction of maximal deficit runs lasting at least n hours",
}


@dataclass(frozen=True, eq=False)
class DeficitIndicator:
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.ndim != 1 or bits.size == 0:
            raise InvalidParameter("indicator needs at least one hour")
        object.__setattr__(self, "bits", bits)

    @property
    def horizon(self) -> int:
        return self.bits.size


@dataclass(frozen=True)
class RunList:
    runs: tuple[tuple[int, int], ...]

    @property
    def lengths(self) -> np.ndarray:
        return np.array([length for _, length in self.runs], dtype=int)

    def to_bits(self, horizon: int) -> np.ndarray:
        bits = np.zeros(horizon, dtype=bool)
        for start, length in self.runs:
            bits[start:start + length] = True
        return bits


@dataclass(frozen=True)
class ClusterRiskProfile:
    """Per cluster length ``n = 1..n_max``: both estimators and their bracket.

    ``window_hits[i]`` and ``run_hits[i]`` are the integer numerators for
    ``n = i + 1``; the probabilities are those counts over
    ``window_totals[i]`` and ``run_total``.
    """

    horizon: int
    window_hits: tuple[int, ...]
    window_totals: tuple[int, ...]
    run_hits: tuple[int, ...]
    run_total: int

    @property
    def n_max(self) -> int:
        return len(self.window_hits)

    @property
    def window(self) -> np.ndarray:
        return np.array(self.window_hits, dtype=float) / np.array(self.window_totals, dtype=float)

    @property
    def run(self) -> np.ndarray:
        return np.array(self.run_hits, dtype=float) / max(1, self.run_total)

    @property
    def low(self) -> np.ndarray:
        return np.minimum(self.window, self.run)

    @property
    def high(self) -> np.ndarray:
        return np.maximum(self.window, self.run)

    def rows(self) -> list[dict]:
        w, r = self.window, self.run
        return [
            {"n": i + 1, "window": float(w[i]), "run": float(r[i]),
             "low": float(min(w[i], r[i])), "high": float(max(w[i], r[i]))}
            for i in range(self.n_max)
        ]


def deficit_indicator(balance: BalanceSeries, reserve: float) -> DeficitIndicator:
    """``bit(h)`` is set when ``t(h) > g(h) + reserve``."""
    check_reserve(reserve)
    # deficit already equals max(0, t - g), and reserve >= 0
    return DeficitIndicator(balance.deficit > reserve)


def find_runs(indicator: DeficitIndicator) -> RunList:
    bits = indicator.bits.astype(np.int8)
    edges = np.diff(np.concatenate(([0], bits, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return RunList(tuple((int(s), int(e - s)) for s, e in zip(starts, ends)))


def cluster_probability(runs: RunList, horizon: int, n_max: int) -> ClusterRiskProfile:
    if not 1 <= n_max <= horizon:
        raise InvalidParameter(f"need 1 <= n_max <= horizon ({horizon}), got {n_max}")
    lengths = runs.lengths
    if lengths.sum() > horizon:
        raise InvalidParameter("runs cover more hours than the horizon")
    ns = np.arange(1, n_max + 1)
    # a run of length L holds max(0, L - n + 1) all-deficit windows of length n
    window_hits = np.clip(lengths[None, :] - ns[:, None] + 1, 0, None).sum(axis=1) if lengths.size else np.zeros(n_max, int)
    run_hits = (lengths[None, :] >= ns[:, None]).sum(axis=1) if lengths.size else np.zeros(n_max, int)
    return ClusterRiskProfile(
        horizon=horizon,
        window_hits=tuple(int(v) for v in window_hits),
        window_totals=tuple(int(horizon - n + 1) for n in ns),
        run_hits=tuple(int(v) for v in run_hits),
        run_total=int(lengths.size),
    )


def cluster_profile(balance: BalanceSeries, reserve: float, n_max: int) -> ClusterRiskProfile:
    indicator = deficit_indicator(balance, reserve)
    return cluster_probability(find_runs(indicator), indicator.horizon, n_max)
