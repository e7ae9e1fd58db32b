"""CLI commands and exit codes."""

import json

import pytest
from typer.testing import CliRunner

from src.cli.console import EXIT_DATA, EXIT_USAGE
from src.cli.main import app
from tests.conftest import SAMPLE_DIR

runner = CliRunner()

ANTITOXIN = str(SAMPLE_DIR / "antitoxin.yaml")
CONFIG = SAMPLE_DIR.parents[2] / "configs" / "antitoxin.yaml"


def test_analyze_text():
    result = runner.invoke(app, ["analyze", "--table", ANTITOXIN])
    assert result.exit_code == 0, result.output
    assert "MAP model: SC+A" in result.output


def test_analyze_json_with_filters():
    result = runner.invoke(
        app,
        [
            "analyze",
            "--table",
            ANTITOXIN,
            "--prior",
            "jeffreys",
            "--model",
            "SC+A",
            "--model",
            "as+sc",
            "--format",
            "json",
        ],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["prior"]["kind"] == "jeffreys"
    assert [m["label"] for m in report["models"]] == ["SC+A", "AS+SC"]


def test_sample_writes_report_file(tmp_path):
    out = tmp_path / "reports" / "sample.json"
    result = runner.invoke(
        app,
        [
            "sample",
            "--table",
            ANTITOXIN,
            "--model",
            "ASC",
            "--draws",
            "300",
            "--seed",
            "5",
            "--format",
            "json",
            "--out",
            str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["sampled_model"] == "ASC"
    assert report["reproducibility"]["draws"] == 300
    assert report["reproducibility"]["seed"] == 5


def test_config_file_with_flag_override():
    result = runner.invoke(
        app,
        [
            "prior-report",
            "--config",
            str(CONFIG),
            "--table",
            ANTITOXIN,
            "--prior",
            "uec",
            "--format",
            "json",
        ],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["prior"]["kind"] == "unit_expected_cell"
    assert report["variance_ratio"] == pytest.approx(2 / 9)


def test_models_from_variables():
    result = runner.invoke(app, ["models", "--variables", "A,S,C"])
    assert result.exit_code == 0, result.output
    assert "Model 4: SC+A (edge)" in result.output
    assert "A+S+C" in result.output


def test_sample_independence_model():
    result = runner.invoke(
        app,
        ["sample", "--table", ANTITOXIN, "--model", "A+S+C", "--draws", "200", "--format", "json"],
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["sampled_model"] == "A+S+C"


def test_models_checks_format_before_reading_table(tmp_path):
    missing = str(tmp_path / "missing.yaml")
    result = runner.invoke(app, ["models", "--table", missing, "--format", "csv"])
    assert result.exit_code == EXIT_USAGE
    assert "Unknown format" in result.output


def test_compare():
    result = runner.invoke(app, ["compare", "--table", ANTITOXIN])
    assert result.exit_code == 0, result.output
    assert "Log marginal likelihoods" in result.output


# --- exit codes ---


@pytest.mark.parametrize(
    "args",
    [
        ["analyze"],
        ["analyze", "--table", ANTITOXIN, "--prior", "flat"],
        ["analyze", "--table", ANTITOXIN, "--w", "0.5"],
        ["analyze", "--table", ANTITOXIN, "--model-prior", "ASC"],
        ["sample", "--table", ANTITOXIN, "--model", "XYZ"],
        ["models"],
        ["models", "--variables", "A,S,C", "--format", "csv"],
    ],
)
def test_usage_errors_exit_1(args):
    result = runner.invoke(app, args)
    assert result.exit_code == EXIT_USAGE
    assert "error:" in result.output


def test_missing_table_exits_2(tmp_path):
    result = runner.invoke(app, ["analyze", "--table", str(tmp_path / "missing.yaml")])
    assert result.exit_code == EXIT_DATA
    assert "not found" in result.output


def test_invalid_table_exits_2(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(
        "variables:\n"
        "  - {name: A, levels: [a, b]}\n"
        "  - {name: B, levels: [a, b]}\n"
        "counts: [1, 2, 3, -4]\n"
    )
    result = runner.invoke(app, ["analyze", "--table", str(path)])
    assert result.exit_code == EXIT_DATA
    assert "counts[3]" in result.output


def test_empirical_prior_on_empty_cell_exits_2(tmp_path):
    path = tmp_path / "sparse.yaml"
    path.write_text(
        "variables:\n"
        "  - {name: A, levels: [a, b]}\n"
        "  - {name: S, levels: [a, b]}\n"
        "  - {name: C, levels: [a, b]}\n"
        "counts: [0, 2, 3, 4, 5, 6, 7, 8]\n"
    )
    result = runner.invoke(app, ["analyze", "--table", str(path), "--prior", "empirical"])
    assert result.exit_code == EXIT_DATA
    assert "Empirical Bayes" in result.output
