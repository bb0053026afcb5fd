"""Analysis pipeline behind the CLI and the versioned JSON result file.

Each ``*_section`` function takes the loaded inputs, returns a plain
JSON-ready dict, and may hand back charts as ``(filename, svg_text)`` pairs.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .boxplot import CONVENTION
from .clusters import ESTIMATORS, cluster_profile
from .config import RunConfig
from .growth import fit_exponential, parse_annual_csv, penetration_series, projection_year
from .hhacf import LAG_CLASSES, hhacf_distribution, lag_uncertainty, size_compensation_fleet
from .ingest import HOUR, TIMESTAMP_FORMAT, DemandProfile, HourlySeries, parse_demand_csv, parse_wind_csv, split_days, wind_columns
from .power import ConversionParams, aggregate_sites, calibrate_scaling, no_wind_fraction, speed_to_energy
from .scenario import build_scenario, critical_threshold, hour_of_day_boxplots, hourly_balance, reserve_exceedance
from .svg import bar_svg, boxplot_svg, interval_svg, line_svg, write_svg
from .sweep import first_critical, run_sweep, sweep_csv

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True, eq=False)
class Inputs:
    config: RunConfig
    tower: str
    speeds: HourlySeries
    demand: DemandProfile
    k: float
    energy: HourlySeries
    towers: dict


def load_inputs(cfg: RunConfig) -> Inputs:
    columns = wind_columns(cfg.wind)
    tower = cfg.tower or (columns[0] if columns else None)
    speeds = parse_wind_csv(cfg.wind, tower)
    demand = parse_demand_csv(cfg.demand)
    start, end = cfg.window
    k = calibrate_scaling(speeds, demand, cfg.cut_in, cfg.cut_out, start, end)
    energy = speed_to_energy(speeds, ConversionParams(k, cfg.cut_in, cfg.cut_out))
    towers = {name: (speeds if name == tower else parse_wind_csv(cfg.wind, name)) for name in columns}
    return Inputs(cfg, tower, speeds, demand, k, energy, towers)


def _ts(series_start, hour: int) -> str:
    return (series_start + hour * HOUR).strftime(TIMESTAMP_FORMAT)


def validate_section(inp: Inputs):
    cfg = inp.config
    count, fraction = no_wind_fraction(inp.speeds, cfg.cut_in, cfg.cut_out)
    days = split_days(inp.speeds)
    wind, total = parse_annual_csv(cfg.annual)
    site_energy = {}
    for name, s in inp.towers.items():
        site_k = calibrate_scaling(s, inp.demand, cfg.cut_in, cfg.cut_out)
        site_energy[name] = speed_to_energy(s, ConversionParams(site_k, cfg.cut_in, cfg.cut_out))
    combined = aggregate_sites(list(site_energy.values()))
    return {
        "tower": inp.tower,
        "towers": list(inp.towers),
        "hours": len(inp.speeds),
        "start": inp.speeds.start.strftime(TIMESTAMP_FORMAT),
        "complete_days": len(days),
        "leftover_hours": days.leftover_hours,
        "no_wind_hours": count,
        "no_wind_fraction": fraction,
        "scaling_factor_gwh_per_mps": inp.k,
        "daily_demand_gwh": inp.demand.daily_total,
        "demand_sectors": list(inp.demand.sectors),
        "annual_years": [wind.years[0], wind.years[-1]],
        "dispersion": {
            "site_zero_hours": {n: int(np.count_nonzero(e.values == 0)) for n, e in site_energy.items()},
            "aggregate_zero_hours": int(np.count_nonzero(combined.values == 0)),
        },
    }, []


def balance_section(inp: Inputs):
    cfg = inp.config
    balance = hourly_balance(build_scenario(inp.energy, inp.demand, cfg.penetration, cfg.reserve))
    worst = int(np.argmax(balance.deficit))
    exceed = reserve_exceedance(balance, cfg.reserve)
    result = {
        "penetration": cfg.penetration,
        "reserve_gwh": cfg.reserve,
        "max_deficit_gwh": float(balance.deficit[worst]),
        "max_deficit_at": _ts(balance.start, worst),
        "max_surplus_gwh": float(balance.surplus.max()),
        "total_deficit_gwh": float(balance.deficit.sum()),
        "total_surplus_gwh": float(balance.surplus.sum()),
        "deficit_hours": int(np.count_nonzero(balance.deficit > 0)),
        "exceedance": [{"at": _ts(balance.start, h), "excess_gwh": x} for h, x in exceed],
    }
    charts = [("balance_bars.svg", bar_svg(
        balance.deficit, balance.surplus,
        f"Hourly deficit and surplus at {cfg.penetration:.0%} penetration",
        x_label="hour of scenario",
    ))]
    # worst day next to the hour-of-day average and the demand target
    gen_days = balance.daily("generation")
    if len(gen_days):
        day_idx = min(max(0, (worst - gen_days.leading.size) // 24), len(gen_days) - 1)
        hours = list(range(24))
        target = cfg.penetration * inp.demand.slots
        charts.append(("daily_profile.svg", line_svg(
            [
                (f"generation {gen_days.dates[day_idx].isoformat()}", hours, gen_days.values[day_idx]),
                ("hourly mean generation", hours, gen_days.values.mean(axis=0)),
                ("demand target", hours, target),
            ],
            "Daily wind generation vs demand target", "hour of day", "GWh",
        )))
        result["profile_day"] = gen_days.dates[day_idx].isoformat()
    return result, charts


def boxplot_section(inp: Inputs):
    cfg = inp.config
    balance = hourly_balance(build_scenario(inp.energy, inp.demand, cfg.penetration, cfg.reserve))
    target = cfg.penetration * inp.demand.slots
    generation = hour_of_day_boxplots(balance.daily("generation"))
    deficit = hour_of_day_boxplots(balance.daily("deficit"))
    result = {
        "convention": CONVENTION,
        "days": len(balance.daily("generation")),
        "generation": [s.as_dict() for s in generation],
        "deficit": [s.as_dict() for s in deficit],
    }
    charts = [
        ("generation_boxplot.svg", boxplot_svg(generation, "Hourly wind generation by hour of day", "GWh",
                                               overlay=list(target))),
        ("deficit_boxplot.svg", boxplot_svg(deficit, "Hourly energy deficit by hour of day", "GWh",
                                            overlay=list(target))),
    ]
    return result, charts


def clusters_section(inp: Inputs):
    cfg = inp.config
    balance = hourly_balance(build_scenario(inp.energy, inp.demand, cfg.penetration, cfg.reserve))
    n_max = min(cfg.n_max, len(balance))
    profile = cluster_profile(balance, cfg.reserve, n_max)
    result = {
        "penetration": cfg.penetration,
        "reserve_gwh": cfg.reserve,
        "horizon_hours": profile.horizon,
        "deficit_runs": profile.run_total,
        "estimators": ESTIMATORS,
        "profile": profile.rows(),
    }
    ns = list(range(1, n_max + 1))
    charts = [("cluster_probability.svg", interval_svg(
        ns, list(profile.low), list(profile.high),
        f"n-hour deficit cluster probability (p={cfg.penetration:g}, R={cfg.reserve:g} GWh)",
        labels=("lower estimate", "upper estimate"),
    ))]
    return result, charts


def acf_section(inp: Inputs):
    cfg = inp.config
    days = split_days(inp.speeds)
    dists = hhacf_distribution(days, cfg.max_lag)
    lags = []
    for d in dists:
        lags.append({
            "lag": d.lag,
            "days_used": len(d.coefficients),
            "days_skipped": d.skipped,
            "summary": d.summary.as_dict(),
            "uncertainty_pct": lag_uncertainty(d, cfg.confidence),
            "uncertainty_with_outliers_pct": lag_uncertainty(d, cfg.confidence, include_outliers=True),
        })
    balance = hourly_balance(build_scenario(inp.energy, inp.demand, cfg.penetration, cfg.reserve))
    worst = float(balance.deficit.max())
    by_lag = {d.lag: d for d in dists}
    # the share of the worst hourly deficit that cannot be anticipated at each horizon
    worst_by_class = {
        lag: worst * min(1.0, max(0.0, lag_uncertainty(by_lag[lag], cfg.confidence) / 100.0))
        for lag in LAG_CLASSES if lag in by_lag
    }
    plan = size_compensation_fleet(worst_by_class, cfg.nameplate_gw, cfg.fast_fraction)
    result = {
        "convention": CONVENTION,
        "confidence": cfg.confidence,
        "uncertainty_mapping": "(1 - rho_low) * 100, rho_low = lower percentile (linear interpolation) or minimum",
        "lags": lags,
        "fleet": {
            "worst_hourly_deficit_gwh": worst,
            "nameplate_gw": cfg.nameplate_gw,
            "fast_fraction": cfg.fast_fraction,
            "classes": [
                {"lag": c.lag, "worst_deficit_gwh": c.worst_deficit, "plants": c.plants} for c in plan.classes
            ],
            "total_plants": plan.total_plants,
        },
    }
    charts = [("hhacf_boxplot.svg", boxplot_svg(
        [d.summary for d in dists], "Hour-to-hour autocorrelation of daily wind speed", "coefficient",
        labels=[f"{d.lag}h" for d in dists],
    ))]
    return result, charts


def fit_section(inp: Inputs):
    cfg = inp.config
    wind, total = parse_annual_csv(cfg.annual)
    pct = penetration_series(wind, total)
    fit = fit_exponential(pct)
    try:
        year = projection_year(fit, cfg.target_percent)
    except ValueError:
        year = None
    result = {
        "a_percent": fit.a,
        "b_per_year": fit.b,
        "t0": fit.t0,
        "r2": fit.r2,
        "r2_space": "original",
        "sse": fit.sse,
        "iterations": fit.iterations,
        "converged": fit.converged,
        "degenerate": fit.degenerate,
        "target_percent": cfg.target_percent,
        "projection_year": year,
        "series": [{"year": y, "percent": float(v)} for y, v in zip(pct.years, pct.values)],
    }
    years = np.array(pct.years, dtype=float)
    span = np.linspace(years[0], years[-1], 60)
    charts = [("growth_fit.svg", line_svg(
        [(f"fit a={fit.a:.4f} b={fit.b:.4f} r2={fit.r2:.4f}", span, fit.predict(span))],
        "Wind share of total generation", "year", "percent",
        points=[("observed", years, pct.values)],
    ))]
    return result, charts


def threshold_section(inp: Inputs):
    cfg = inp.config
    balance = hourly_balance(build_scenario(inp.energy, inp.demand, cfg.reference_p, cfg.reserve))
    p_star = critical_threshold(inp.energy, inp.demand, cfg.reserve, cfg.reference_p)
    return {
        "reference_p": cfg.reference_p,
        "reserve_gwh": cfg.reserve,
        "max_deficit_at_reference_gwh": float(balance.deficit.max()),
        "critical_penetration": p_star,
    }, []


def sweep_section(inp: Inputs):
    cfg = inp.config
    rows = run_sweep(inp.energy, inp.demand, cfg.grid)
    table = []
    for row in rows:
        table.append({
            "p": row.penetration,
            "reserve_gwh": row.reserve,
            "max_deficit_gwh": row.max_deficit,
            "exceedance_hours": row.exceedance_hours,
            "critical": row.critical,
            "clusters": row.clusters.rows(),
        })
    thresholds = []
    for r in cfg.reserves:
        try:
            p_star = critical_threshold(inp.energy, inp.demand, r, cfg.reference_p)
        except ValueError:
            p_star = None
        thresholds.append({"reserve_gwh": r, "critical_penetration": p_star,
                           "first_critical_grid_p": first_critical(rows, r)})
    result = {"estimators": ESTIMATORS, "rows": table, "thresholds": thresholds}

    ps = sorted(set(cfg.penetrations))
    max_def = {row.penetration: row.max_deficit for row in rows}
    series = [("max hourly deficit", ps, [max_def[p] for p in ps])]
    for r in cfg.reserves:
        series.append((f"reserve {r:g} GWh", ps, [r] * len(ps)))
    charts = [
        ("sweep.svg", line_svg(series, "Largest hourly deficit vs penetration", "penetration", "GWh")),
    ]
    return result, charts, sweep_csv(rows)


def file_checksums(cfg: RunConfig) -> dict:
    return {
        key: hashlib.sha256(Path(getattr(cfg, key)).read_bytes()).hexdigest()
        for key in ("wind", "demand", "annual")
    }


def emit_report(results: dict, path) -> Path:
    """Write the result dict as sorted, indented JSON (byte-stable)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(results, indent=2, sort_keys=True, allow_nan=False) + "\n"
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path


def build_report(inp: Inputs) -> tuple[dict, list, str]:
    sections = {}
    charts = []
    for name, fn in (
        ("validate", validate_section),
        ("balance", balance_section),
        ("boxplot", boxplot_section),
        ("clusters", clusters_section),
        ("acf", acf_section),
        ("fit", fit_section),
        ("threshold", threshold_section),
    ):
        result, section_charts = fn(inp)
        sections[name] = result
        charts.extend(section_charts)
    sweep_result, sweep_charts, csv_text = sweep_section(inp)
    sections["sweep"] = sweep_result
    charts.extend(sweep_charts)
    results = {
        "schema_version": SCHEMA_VERSION,
        "generator": f"windrisk {__version__}",
        "config": inp.config.echo(),
        "checksums": file_checksums(inp.config),
        "conventions": {"boxplot": CONVENTION, "cluster_estimators": ESTIMATORS},
        "results": sections,
    }
    return results, charts, csv_text


def write_charts(charts, out_dir) -> list[Path]:
    return [write_svg(text, Path(out_dir) / name) for name, text in charts]
