"""Hour-resolution wind intermittency and energy-deficit risk analytics."""

__version__ = "0.1.0"

from .boxplot import BoxplotSummary, summarize
from .clusters import ClusterRiskProfile, DeficitIndicator, RunList, cluster_probability, deficit_indicator, find_runs
from .errors import WindRiskError
from .growth import AnnualSeries, ExpFit, fit_exponential, penetration_series, projection_year
from .hhacf import FleetPlan, LagDistribution, autocorr, hhacf_distribution, lag_uncertainty, size_compensation_fleet
from .ingest import DailyProfileSet, DemandProfile, HourlySeries, Unit, parse_demand_csv, parse_wind_csv, split_days
from .power import ConversionParams, aggregate_sites, calibrate_scaling, no_wind_fraction, speed_to_energy
from .scenario import (
    BalanceSeries,
    Scenario,
    build_scenario,
    critical_threshold,
    hour_of_day_boxplots,
    hourly_balance,
    reserve_exceedance,
)
from .sweep import SweepGrid, run_sweep
