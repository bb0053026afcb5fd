import sys
from datetime import datetime
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from windrisk.fixtures import data_path  # noqa: E402
from windrisk.ingest import DemandProfile, HourlySeries, Unit  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture
def wind_csv():
    return data_path("wind.csv")


@pytest.fixture
def demand_csv():
    return data_path("demand.csv")


@pytest.fixture
def flat_demand():
    return DemandProfile(np.full(24, 10.0))


def energy_series(values, start=datetime(2010, 3, 1)):
    return HourlySeries(start, values, Unit.GIGAWATT_HOURS)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "acceptance", None)
    if marker and ACCEPTANCE.get(marker) != "failed":
        ACCEPTANCE[marker] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark:
        report.acceptance = mark.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        verdict = "PASS" if ACCEPTANCE[label] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}")
