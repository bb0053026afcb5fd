import hashlib

import pytest

from windrisk.cli import COMMANDS, main
from windrisk.fixtures import data_path

FIXTURES = ("wind.csv", "demand.csv", "annual_noisy.csv", "annual_noiseless.csv")


def digests():
    return {name: hashlib.sha256(data_path(name).read_bytes()).hexdigest() for name in FIXTURES}


@pytest.mark.parametrize("command", [c for c in COMMANDS if c != "report"])
def test_every_subcommand_succeeds(command, capsys, tmp_path):
    before = digests()
    assert main([command, "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip()
    assert digests() == before


def test_report_writes_outputs(tmp_path, capsys):
    assert main(["report", "--out", str(tmp_path)]) == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"report.json", "sweep.csv", "sweep.svg", "cluster_probability.svg"} <= names


def test_report_without_plots(tmp_path, capsys):
    assert main(["report", "--out", str(tmp_path), "--no-plots"]) == 0
    assert {p.name for p in tmp_path.iterdir()} == {"report.json", "sweep.csv"}


def test_printed_values(capsys):
    main(["validate"])
    assert "(7.2222%)" in capsys.readouterr().out
    main(["threshold", "--reserve", "5"])
    assert "p* = 5.2706%" in capsys.readouterr().out
    main(["fit", "--annual", str(data_path("annual_noiseless.csv"))])
    assert "a=0.5000 b=0.2000 r2=1.0000" in capsys.readouterr().out


def test_gap_is_a_validation_error(capsys):
    assert main(["validate", "--wind", str(data_path("wind_gapped.csv"))]) == 1
    assert "2010-03-03T07:00" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["threshold", "--penetration", "1.5"],
    ["balance", "--reserve", "-2"],
    ["validate", "--wind", "/nonexistent/wind.csv"],
    ["validate", "--tower", "tower_z"],
])
def test_bad_inputs_exit_one(argv, capsys):
    assert main(argv) == 1
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["threshold", "--reserve", "lots"]])
def test_usage_errors_exit_two(argv, capsys):
    assert main(argv) == 2


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text(
        f"wind: {data_path('wind.csv')}\n"
        "scenario:\n  reserve: 2.5\n  reference_p: 0.15\n"
    )
    main(["threshold", "--config", str(cfg)])
    assert "p* = 2.6353%" in capsys.readouterr().out
    main(["threshold", "--config", str(cfg), "--reserve", "5"])
    assert "p* = 5.2706%" in capsys.readouterr().out


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("scenario:\n  wobble: 1\n")
    assert main(["threshold", "--config", str(cfg)]) == 1
