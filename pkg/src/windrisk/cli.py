"""``windrisk`` command-line interface.

Exit status: 0 on success, 1 on a data or configuration error, 2 on a usage
error. Numbers are printed with four decimals.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .errors import WindRiskError
from .report import (
    acf_section,
    balance_section,
    boxplot_section,
    build_report,
    clusters_section,
    emit_report,
    fit_section,
    load_inputs,
    sweep_section,
    threshold_section,
    validate_section,
    write_charts,
)

COMMANDS = ("validate", "balance", "boxplot", "clusters", "acf", "fit", "threshold", "sweep", "report")


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="YAML run configuration")
    p.add_argument("--wind", help="hourly wind speed CSV")
    p.add_argument("--tower", help="tower column in the wind CSV (default: first)")
    p.add_argument("--demand", help="24-hour demand profile CSV")
    p.add_argument("--annual", help="annual wind/total generation CSV")
    p.add_argument("--penetration", type=float, help="wind penetration fraction p")
    p.add_argument("--reserve", type=float, help="reserve capacity R in GWh")
    p.add_argument("--reference-p", dest="reference_p", type=float, help="reference penetration for the threshold")
    p.add_argument("--cut-in", dest="cut_in", type=float, help="cut-in speed, m/s")
    p.add_argument("--cut-out", dest="cut_out", type=float, help="cut-out speed, m/s")
    p.add_argument("--nmax", dest="n_max", type=int, help="longest deficit cluster length, hours")
    p.add_argument("--max-lag", dest="max_lag", type=int, help="largest autocorrelation lag, hours")
    p.add_argument("--target", dest="target_percent", type=float, help="penetration target for projection, percent")
    p.add_argument("--out", help="output directory")
    p.add_argument("--no-plots", dest="plots", action="store_false", default=None, help="skip SVG output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="windrisk", description="Wind intermittency deficit-risk analytics")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    common = _common_parser()
    helps = {
        "validate": "ingest inputs and check every invariant",
        "balance": "hourly deficit and surplus at one penetration",
        "boxplot": "hour-of-day distributions of generation and deficit",
        "clusters": "n-hour deficit cluster probabilities",
        "acf": "hour-to-hour autocorrelation and compensation fleet",
        "fit": "exponential fit of penetration growth",
        "threshold": "critical penetration for a reserve",
        "sweep": "penetration x reserve grid",
        "report": "run everything and write a versioned result file",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _x(v) -> str:
    return f"{v:.4f}"


def _print_validate(r):
    print(f"tower: {r['tower']}  hours: {r['hours']}  start: {r['start']}")
    print(f"complete days: {r['complete_days']}  leftover hours: {r['leftover_hours']}")
    print(f"no-wind hours: {r['no_wind_hours']} of {r['hours']} ({_x(100 * r['no_wind_fraction'])}%)")
    print(f"scaling factor k: {_x(r['scaling_factor_gwh_per_mps'])} GWh per m/s-h")
    print(f"daily demand: {_x(r['daily_demand_gwh'])} GWh")
    d = r["dispersion"]
    sites = "  ".join(f"{n}={c}" for n, c in d["site_zero_hours"].items())
    print(f"zero-energy hours per site: {sites}  aggregate: {d['aggregate_zero_hours']}")


def _print_balance(r):
    print(f"penetration: {_x(r['penetration'])}  reserve: {_x(r['reserve_gwh'])} GWh")
    print(f"max deficit: {_x(r['max_deficit_gwh'])} GWh at {r['max_deficit_at']}")
    print(f"max surplus: {_x(r['max_surplus_gwh'])} GWh")
    print(f"total deficit: {_x(r['total_deficit_gwh'])} GWh over {r['deficit_hours']} hours")
    print(f"total surplus: {_x(r['total_surplus_gwh'])} GWh")
    print(f"hours exceeding reserve: {len(r['exceedance'])}")
    for e in r["exceedance"]:
        print(f"  {e['at']}  excess {_x(e['excess_gwh'])} GWh")


def _print_boxplot(r):
    print(f"convention: {r['convention']}  days: {r['days']}")
    print("hour  gen_q1  gen_med  gen_q3  def_med  def_max  def_outliers")
    for h, (g, d) in enumerate(zip(r["generation"], r["deficit"])):
        print(f"{h:4d}  {_x(g['q1'])}  {_x(g['median'])}  {_x(g['q3'])}  "
              f"{_x(d['median'])}  {_x(d['max'])}  {len(d['outliers'])}")


def _print_clusters(r):
    print(f"penetration: {_x(r['penetration'])}  reserve: {_x(r['reserve_gwh'])} GWh  "
          f"horizon: {r['horizon_hours']} h  runs: {r['deficit_runs']}")
    print("n  window  run  low  high")
    for row in r["profile"]:
        print(f"{row['n']}  {_x(row['window'])}  {_x(row['run'])}  {_x(row['low'])}  {_x(row['high'])}")


def _print_acf(r):
    print(f"confidence: {_x(r['confidence'])}")
    print("lag  days  median  q1  min  uncertainty%  with_outliers%")
    for lag in r["lags"]:
        s = lag["summary"]
        print(f"{lag['lag']}  {lag['days_used']}  {_x(s['median'])}  {_x(s['q1'])}  {_x(s['min'])}  "
              f"{_x(lag['uncertainty_pct'])}  {_x(lag['uncertainty_with_outliers_pct'])}")
    f = r["fleet"]
    print(f"fleet: nameplate {_x(f['nameplate_gw'])} GW, fast fraction {_x(f['fast_fraction'])}")
    for c in f["classes"]:
        print(f"  {c['lag']}-hr class: worst deficit {_x(c['worst_deficit_gwh'])} GWh -> {c['plants']} plants")


def _print_fit(r):
    print(f"a={_x(r['a_percent'])} b={_x(r['b_per_year'])} r2={_x(r['r2'])}")
    print(f"t0={_x(r['t0'])}  converged={r['converged']}  degenerate={r['degenerate']}")
    if r["projection_year"] is None:
        print(f"no crossing of {_x(r['target_percent'])}%")
    else:
        print(f"year reaching {_x(r['target_percent'])}%: {_x(r['projection_year'])}")


def _print_threshold(r):
    print(f"max deficit at p={_x(r['reference_p'])}: {_x(r['max_deficit_at_reference_gwh'])} GWh")
    print(f"reserve: {_x(r['reserve_gwh'])} GWh")
    print(f"p* = {_x(100 * r['critical_penetration'])}%")


def _print_sweep(r):
    print("p  reserve_gwh  max_deficit_gwh  exceedance_hours  critical")
    for row in r["rows"]:
        print(f"{_x(row['p'])}  {_x(row['reserve_gwh'])}  {_x(row['max_deficit_gwh'])}  "
              f"{row['exceedance_hours']}  {str(row['critical']).lower()}")
    for t in r["thresholds"]:
        p_star = "none" if t["critical_penetration"] is None else f"{_x(100 * t['critical_penetration'])}%"
        first = "none" if t["first_critical_grid_p"] is None else _x(t["first_critical_grid_p"])
        print(f"reserve {_x(t['reserve_gwh'])} GWh: p* = {p_star}, first critical grid p = {first}")


SECTIONS = {
    "validate": (validate_section, _print_validate),
    "balance": (balance_section, _print_balance),
    "boxplot": (boxplot_section, _print_boxplot),
    "clusters": (clusters_section, _print_clusters),
    "acf": (acf_section, _print_acf),
    "fit": (fit_section, _print_fit),
    "threshold": (threshold_section, _print_threshold),
}


def run(args: argparse.Namespace) -> None:
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    cfg = load_config(args.config, overrides)
    inp = load_inputs(cfg)
    out = Path(cfg.out) if cfg.out else None

    if args.command == "report":
        out = out or Path("report")
        results, charts, csv_text = build_report(inp)
        for name, (_, printer) in SECTIONS.items():
            print(f"== {name}")
            printer(results["results"][name])
        print("== sweep")
        _print_sweep(results["results"]["sweep"])
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.csv").write_text(csv_text)
        if cfg.plots:
            write_charts(charts, out)
        emit_report(results, out / "report.json")
        print(f"wrote {out / 'report.json'}")
        return

    if args.command == "sweep":
        result, charts, csv_text = sweep_section(inp)
        _print_sweep(result)
        if out:
            out.mkdir(parents=True, exist_ok=True)
            (out / "sweep.csv").write_text(csv_text)
    else:
        compute, printer = SECTIONS[args.command]
        result, charts = compute(inp)
        printer(result)
    if out and cfg.plots and charts:
        write_charts(charts, out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        run(args)
    except (WindRiskError, OSError) as exc:
        print(f"windrisk {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
