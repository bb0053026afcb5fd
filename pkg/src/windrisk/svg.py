"""Deterministic SVG charts.

Output depends only on the data passed in: coordinates are printed with a
fixed precision, element order follows input order, and nothing time- or
environment-dependent is written.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .boxplot import BoxplotSummary

WIDTH = 720
HEIGHT = 420
MARGIN = (60, 30, 50, 70)  # top, right, bottom, left

DEFICIT_COLOR = "#d62728"
SURPLUS_COLOR = "#2ca02c"
PALETTE = ("#1f77b4", "#000000", "#2ca02c", "#d62728", "#9467bd", "#8c564b")
INTERVAL_COLORS = ("#d62728", "#1f77b4")


def _f(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.floor(lo / step) * step
    ticks = []
    v = start
    while v <= hi + step * 1e-9:
        ticks.append(round(v, 10))
        v += step
    return ticks


@dataclass
class Axes:
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    parts: list[str] = field(default_factory=list)

    def __post_init__(self):
        ticks = _nice_ticks(*self.y_range)
        self.y_range = (min(ticks[0], self.y_range[0]), max(ticks[-1], self.y_range[1]))
        self._yticks = ticks

    def x(self, v: float) -> float:
        top, right, bottom, left = MARGIN
        lo, hi = self.x_range
        return left + (v - lo) / (hi - lo) * (WIDTH - left - right)

    def y(self, v: float) -> float:
        top, right, bottom, left = MARGIN
        lo, hi = self.y_range
        return HEIGHT - bottom - (v - lo) / (hi - lo) * (HEIGHT - top - bottom)

    def add(self, element: str) -> None:
        self.parts.append(element)

    def line(self, x1, y1, x2, y2, color="#000000", width=1.0, dash=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'<line x1="{_f(self.x(x1))}" y1="{_f(self.y(y1))}" x2="{_f(self.x(x2))}" '
            f'y2="{_f(self.y(y2))}" stroke="{color}" stroke-width="{width}"{extra}/>'
        )

    def polyline(self, xs, ys, color, width=1.5, dash=None):
        pts = " ".join(f"{_f(self.x(a))},{_f(self.y(b))}" for a, b in zip(xs, ys))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>')

    def rect(self, x0, y0, x1, y1, fill, stroke="none"):
        xa, xb = sorted((self.x(x0), self.x(x1)))
        ya, yb = sorted((self.y(y0), self.y(y1)))
        self.add(
            f'<rect x="{_f(xa)}" y="{_f(ya)}" width="{_f(xb - xa)}" height="{_f(yb - ya)}" '
            f'fill="{fill}" stroke="{stroke}"/>'
        )

    def circle(self, cx, cy, color, r=3.0, cls=None):
        extra = f' class="{cls}"' if cls else ""
        self.add(f'<circle cx="{_f(self.x(cx))}" cy="{_f(self.y(cy))}" r="{r}" fill="none" stroke="{color}"{extra}/>')

    def legend(self, entries: Sequence[tuple[str, str]]):
        top, right, bottom, left = MARGIN
        x = WIDTH - right - 170
        for i, (label, color) in enumerate(entries):
            y = top + 12 + 16 * i
            self.parts.append(f'<rect x="{x}" y="{y - 9}" width="12" height="10" fill="{color}"/>')
            self.parts.append(f'<text x="{x + 18}" y="{y}" font-size="11">{escape(label)}</text>')

    def render(self, x_ticks: Sequence[tuple[float, str]]) -> str:
        top, right, bottom, left = MARGIN
        frame = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
            f'<text x="{WIDTH / 2:.0f}" y="24" font-size="15" text-anchor="middle">{escape(self.title)}</text>',
        ]
        x0, x1 = left, WIDTH - right
        y0, y1 = HEIGHT - bottom, top
        frame.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#000000"/>')
        frame.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#000000"/>')
        for v in self._yticks:
            yy = _f(self.y(v))
            frame.append(f'<line x1="{x0 - 4}" y1="{yy}" x2="{x0}" y2="{yy}" stroke="#000000"/>')
            frame.append(f'<text x="{x0 - 7}" y="{yy}" font-size="10" text-anchor="end" dominant-baseline="middle">{v:g}</text>')
        for v, label in x_ticks:
            xx = _f(self.x(v))
            frame.append(f'<line x1="{xx}" y1="{y0}" x2="{xx}" y2="{y0 + 4}" stroke="#000000"/>')
            frame.append(f'<text x="{xx}" y="{y0 + 16}" font-size="10" text-anchor="middle">{escape(label)}</text>')
        frame.append(f'<text x="{(x0 + x1) / 2:.0f}" y="{HEIGHT - 12}" font-size="12" text-anchor="middle">{escape(self.x_label)}</text>')
        frame.append(
            f'<text x="16" y="{(y0 + y1) / 2:.0f}" font-size="12" text-anchor="middle" '
            f'transform="rotate(-90 16 {(y0 + y1) / 2:.0f})">{escape(self.y_label)}</text>'
        )
        return "\n".join(frame + self.parts + ["</svg>"]) + "\n"


def _bounds(*arrays, floor: float | None = None) -> tuple[float, float]:
    values = [float(v) for arr in arrays for v in arr]
    for v in values:
        if not math.isfinite(v):
            raise ValueError("chart data must be finite")
    lo, hi = min(values), max(values)
    if floor is not None:
        lo = min(lo, floor)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def boxplot_svg(
    summaries: Sequence[BoxplotSummary],
    title: str,
    y_label: str,
    labels: Sequence[str] | None = None,
    overlay: Sequence[float] | None = None,
    overlay_label: str = "demand",
) -> str:
    """Side-by-side boxplots; ``overlay`` draws a solid black line across boxes."""
    n = len(summaries)
    labels = list(labels) if labels is not None else [str(i) for i in range(n)]
    ys = [s.minimum for s in summaries] + [s.maximum for s in summaries]
    lo, hi = _bounds(ys, [] if overlay is None else overlay, floor=0.0 if min(ys) >= 0 else None)
    ax = Axes((-0.5, n - 0.5), (lo, hi), title, "", y_label)
    for i, s in enumerate(summaries):
        ax.rect(i - 0.3, s.q1, i + 0.3, s.q3, fill="#9ecae1", stroke="#08519c")
        ax.line(i - 0.3, s.median, i + 0.3, s.median, color="#08519c", width=2)
        ax.line(i, s.q3, i, s.upper_whisker, color="#08519c", dash="3,2")
        ax.line(i, s.q1, i, s.lower_whisker, color="#08519c", dash="3,2")
        ax.line(i - 0.15, s.upper_whisker, i + 0.15, s.upper_whisker, color="#08519c")
        ax.line(i - 0.15, s.lower_whisker, i + 0.15, s.lower_whisker, color="#08519c")
        for v in s.outliers:
            ax.circle(i, v, DEFICIT_COLOR, cls="outlier")
    if overlay is not None:
        ax.polyline(range(len(overlay)), overlay, "#000000", width=2)
        ax.legend([(overlay_label, "#000000")])
    step = max(1, n // 12)
    return ax.render([(i, labels[i]) for i in range(0, n, step)])


def bar_svg(deficit: Sequence[float], surplus: Sequence[float], title: str, x_label: str = "hour") -> str:
    """Surplus drawn upward in green, deficit downward in red."""
    n = len(deficit)
    lo, hi = _bounds([-v for v in deficit], surplus, [0.0])
    ax = Axes((-0.5, n - 0.5), (lo, hi), title, x_label, "GWh")
    for i, (d, u) in enumerate(zip(deficit, surplus)):
        if u > 0:
            ax.rect(i - 0.4, 0.0, i + 0.4, u, fill=SURPLUS_COLOR)
        if d > 0:
            ax.rect(i - 0.4, -d, i + 0.4, 0.0, fill=DEFICIT_COLOR)
    ax.line(-0.5, 0.0, n - 0.5, 0.0, color="#555555")
    ax.legend([("surplus", SURPLUS_COLOR), ("deficit", DEFICIT_COLOR)])
    step = 24 if n > 48 else max(1, n // 12)
    return ax.render([(i, str(i)) for i in range(0, n, step)])


def line_svg(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    x_label: str,
    y_label: str,
    points: Sequence[tuple[str, Sequence[float], Sequence[float]]] = (),
) -> str:
    """Lines given as ``(label, xs, ys)``; ``points`` are drawn as markers."""
    xs_all = [x for _, xs, _ in list(series) + list(points) for x in xs]
    ys_all = [y for _, _, ys in list(series) + list(points) for y in ys]
    x_lo, x_hi = _bounds(xs_all)
    y_lo, y_hi = _bounds(ys_all, floor=0.0 if min(ys_all) >= 0 else None)
    ax = Axes((x_lo, x_hi), (y_lo, y_hi), title, x_label, y_label)
    entries = []
    for i, (label, xs, ys) in enumerate(points):
        color = PALETTE[(i + 2) % len(PALETTE)]
        for a, b in zip(xs, ys):
            ax.circle(a, b, color)
        entries.append((label, color))
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        ax.polyline(xs, ys, color)
        entries.append((label, color))
    ax.legend(entries)
    ticks = _nice_ticks(x_lo, x_hi, 8)
    return ax.render([(t, f"{t:g}") for t in ticks if x_lo <= t <= x_hi])


def interval_svg(ns: Sequence[int], low: Sequence[float], high: Sequence[float], title: str,
                 labels: tuple[str, str] = ("low", "high")) -> str:
    """Probability bracket per cluster length: shaded band between two lines."""
    _bounds(low, high)
    ax = Axes((min(ns) - 0.5, max(ns) + 0.5), (0.0, max(1e-9, max(high))), title, "cluster length n (hours)", "probability")
    band = [f"{_f(ax.x(n))},{_f(ax.y(v))}" for n, v in zip(ns, high)]
    band += [f"{_f(ax.x(n))},{_f(ax.y(v))}" for n, v in zip(reversed(ns), reversed(low))]
    ax.add(f'<polygon points="{" ".join(band)}" fill="#cccccc" fill-opacity="0.5" stroke="none"/>')
    ax.polyline(ns, low, INTERVAL_COLORS[0])
    ax.polyline(ns, high, INTERVAL_COLORS[1])
    ax.legend([(labels[0], INTERVAL_COLORS[0]), (labels[1], INTERVAL_COLORS[1])])
    return ax.render([(n, str(n)) for n in ns])


RENDERERS = {
    "boxplot": boxplot_svg,
    "bar": bar_svg,
    "line": line_svg,
    "probability-interval": interval_svg,
}


def emit_svg(chart: str, data: dict, path) -> Path:
    """Render ``chart`` (a key of :data:`RENDERERS`) with ``data`` as keyword arguments."""
    try:
        render = RENDERERS[chart]
    except KeyError:
        raise ValueError(f"unknown chart type {chart!r}") from None
    return write_svg(render(**data), path)


def write_svg(text: str, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path
