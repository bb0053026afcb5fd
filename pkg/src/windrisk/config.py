"""Run configuration: YAML file plus command-line overrides.

Example::

    wind: data/wind.csv
    tower: tower_a
    demand: data/demand.csv
    annual: data/annual_noisy.csv
    conversion: {cut_in: 4.0, cut_out: 25.0}
    calibration: {start: 2010-03-01T00:00, end: null}
    scenario: {penetration: 0.15, reserve: 5.0, reference_p: 0.15}
    clusters: {n_max: 15}
    acf: {max_lag: 6, confidence: 0.95}
    fleet: {nameplate_gw: 0.25, fast_fraction: 0.2}
    growth: {target_percent: 15.0}
    sweep: {penetrations: [0.01, 0.02], reserves: [2.5, 5.0]}
    out: results
    plots: true

Relative paths are resolved against the config file's directory. Missing
keys fall back to the bundled fixtures and defaults below. Everything is
validated before any computation starts.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from datetime import datetime
from pathlib import Path

import yaml

from .errors import ConfigError
from .fixtures import data_path
from .power import check_band
from .scenario import check_penetration, check_reserve
from .sweep import SweepGrid

DEFAULT_PENETRATIONS = tuple(round(0.01 * i, 2) for i in range(1, 16))
DEFAULT_RESERVES = (2.5, 5.0)

_SECTIONS = {
    "conversion": ("cut_in", "cut_out"),
    "calibration": ("start", "end"),
    "scenario": ("penetration", "reserve", "reference_p"),
    "clusters": ("n_max",),
    "acf": ("max_lag", "confidence"),
    "fleet": ("nameplate_gw", "fast_fraction"),
    "growth": ("target_percent",),
    "sweep": ("penetrations", "reserves"),
}
_TOP = ("wind", "tower", "demand", "annual", "out", "plots")


@dataclass(frozen=True)
class RunConfig:
    wind: str = str(data_path("wind.csv"))
    demand: str = str(data_path("demand.csv"))
    annual: str = str(data_path("annual_noisy.csv"))
    tower: str | None = None
    cut_in: float = 4.0
    cut_out: float = 25.0
    start: str | None = None
    end: str | None = None
    penetration: float = 0.15
    reserve: float = 5.0
    reference_p: float = 0.15
    n_max: int = 15
    max_lag: int = 6
    confidence: float = 0.95
    nameplate_gw: float = 0.25
    fast_fraction: float = 0.2
    target_percent: float = 15.0
    penetrations: tuple[float, ...] = DEFAULT_PENETRATIONS
    reserves: tuple[float, ...] = DEFAULT_RESERVES
    out: str | None = None
    plots: bool = True

    @property
    def grid(self) -> SweepGrid:
        return SweepGrid(self.penetrations, self.reserves, self.n_max)

    @property
    def window(self) -> tuple[datetime | None, datetime | None]:
        return _timestamp(self.start), _timestamp(self.end)

    def echo(self) -> dict:
        data = asdict(self)
        data["penetrations"] = list(self.penetrations)
        data["reserves"] = list(self.reserves)
        for key in ("wind", "demand", "annual"):
            data[key] = Path(data[key]).name
        data.pop("out")
        return data


def _timestamp(text):
    if text is None:
        return None
    if isinstance(text, datetime):
        return text
    try:
        return datetime.fromisoformat(str(text))
    except ValueError as exc:
        raise ConfigError(f"bad calibration timestamp {text!r}") from exc


def _flatten(raw: dict, base: Path) -> dict:
    flat = {}
    for key, value in raw.items():
        if key in _SECTIONS:
            if not isinstance(value, dict):
                raise ConfigError(f"config section {key!r} must be a mapping")
            for sub, v in value.items():
                if sub not in _SECTIONS[key]:
                    raise ConfigError(f"unknown key {key}.{sub}")
                flat[sub] = v
        elif key in _TOP:
            flat[key] = value
        else:
            raise ConfigError(f"unknown config key {key!r}")
    for key in ("wind", "demand", "annual", "out"):
        if flat.get(key) is not None:
            p = Path(flat[key])
            flat[key] = str(p if p.is_absolute() else base / p)
    return flat


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Build a validated :class:`RunConfig`; ``overrides`` beat file values."""
    values: dict = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            raw = yaml.safe_load(path.read_text()) or {}
        except yaml.YAMLError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: top level must be a mapping")
        values.update(_flatten(raw, path.parent))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    for key in ("start", "end"):
        if isinstance(values.get(key), datetime):
            values[key] = values[key].isoformat(timespec="minutes")
    for key in ("penetrations", "reserves"):
        if key in values:
            values[key] = tuple(values[key])
    try:
        cfg = replace(RunConfig(), **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    validate(cfg)
    return cfg


def _number(name, value, integer=False):
    ok = isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)
    if not ok or (integer and int(value) != value):
        raise ConfigError(f"{name} must be a finite {'integer' if integer else 'number'}, got {value!r}")


def validate(cfg: RunConfig) -> None:
    for key in ("wind", "demand", "annual"):
        if not Path(getattr(cfg, key)).is_file():
            raise ConfigError(f"{key} file not found: {getattr(cfg, key)}")
    for key in ("cut_in", "cut_out", "penetration", "reserve", "reference_p", "confidence",
                "nameplate_gw", "fast_fraction", "target_percent"):
        _number(key, getattr(cfg, key))
    for key in ("n_max", "max_lag"):
        _number(key, getattr(cfg, key), integer=True)
    check_band(cfg.cut_in, cfg.cut_out)
    check_penetration(cfg.penetration)
    check_penetration(cfg.reference_p)
    check_reserve(cfg.reserve)
    if cfg.n_max < 1:
        raise ConfigError("n_max must be at least 1")
    if not 1 <= cfg.max_lag <= 22:
        raise ConfigError("max_lag must lie in 1..22")
    if not 0 < cfg.confidence < 1:
        raise ConfigError("confidence must lie in (0, 1)")
    if cfg.nameplate_gw <= 0 or not 0 < cfg.fast_fraction <= 1:
        raise ConfigError("fleet needs nameplate_gw > 0 and fast_fraction in (0, 1]")
    if cfg.target_percent <= 0:
        raise ConfigError("target_percent must be positive")
    cfg.grid  # validates the sweep lists
    cfg.window
