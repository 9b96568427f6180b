"""Tests for the command line interface."""

import importlib
import io
import json

import numpy as np
import pandas as pd
import pytest
from rich.console import Console
from typer.testing import CliRunner
import yaml

from restricted_regression import __version__
from restricted_regression.cli import app
from restricted_regression.distributions import RngStream
from restricted_regression.experiments import catalog
from restricted_regression.experiments.simulation import simulate_univariate

runner = CliRunner()


@pytest.fixture
def toy_yaml(tmp_path):
    """Write a small univariate fit config plus its data; return a writer."""
    data = simulate_univariate(catalog.EXAMPLE1_BETA, 1.0, 30, RngStream(8))
    frame = pd.DataFrame(data.X[:, 1:], columns=["x1", "x2", "x3", "x4"])
    frame.insert(0, "y", data.Y)
    frame.to_csv(tmp_path / "toy.csv", index=False)

    def _write(G=(-0.5, 0.2, 2.2), K=None):
        restrictions = {
            "H": [[0, 1, 1, 0, 0], [0, 1, 0, 1, -1], [0, 0, 1, 0, 1]],
            "G": list(G),
        }
        if K is not None:
            restrictions["K"] = list(K)
        doc = {
            "name": "toy",
            "model": "univariate",
            "data": {"path": "toy.csv", "response": ["y"], "predictors": ["x1", "x2", "x3", "x4"]},
            "restrictions": restrictions,
            "prior": {"a": 6, "b": 2},
            "sampler": {"iters": 200, "seed": 4},
        }
        path = tmp_path / "toy.yaml"
        path.write_text(yaml.safe_dump(doc), encoding="utf-8")
        return path

    return _write


def test_version():
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert f"restricted-regression {__version__}" in result.output


def test_configs_lists_shipped():
    result = runner.invoke(app, ["configs"])
    assert result.exit_code == 0
    assert "chemical" in result.output
    assert "rent" in result.output


@pytest.mark.parametrize(("args", "expected"), [(["configs"], "chemical"), (["validate"], "rent")])
def test_listings_go_to_the_error_console(mocker, args, expected):
    buffer = io.StringIO()
    app_module = importlib.import_module("restricted_regression.cli.app")
    mocker.patch.object(app_module, "err_console", Console(file=buffer, width=120))
    result = runner.invoke(app, args)
    assert result.exit_code == 0
    assert expected in buffer.getvalue()


def test_validate_shipped():
    result = runner.invoke(app, ["validate"])
    assert result.exit_code == 0


def test_validate_reports_schema_errors(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(yaml.safe_dump({"name": "bad", "model": "cubic"}), encoding="utf-8")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 2
    assert "model" in result.output


def test_validate_unknown_file():
    result = runner.invoke(app, ["validate", "does-not-exist.yaml"])
    assert result.exit_code == 2


def test_replicate_unknown_study():
    result = runner.invoke(app, ["replicate", "example3"])
    assert result.exit_code == 2


def test_replicate_bad_scale():
    result = runner.invoke(app, ["replicate", "example1-r1", "--scale", "huge"])
    assert result.exit_code == 2


def test_replicate_rent_without_data(tmp_path):
    result = runner.invoke(app, ["replicate", "rent", "--data", str(tmp_path / "rent.csv")])
    assert result.exit_code == 2


def test_fit_uni_empty_interval(toy_yaml, tmp_path):
    path = toy_yaml(G=(-0.5, 0.2, 2.2), K=(0.0, "-inf", 3.0))
    result = runner.invoke(app, ["fit-uni", str(path), "-o", str(tmp_path / "out")])
    assert result.exit_code == 3


def test_fit_uni_missing_config():
    result = runner.invoke(app, ["fit-uni", "nowhere.yaml"])
    assert result.exit_code == 2


def test_fit_uni_needs_config_or_manifest():
    result = runner.invoke(app, ["fit-uni"])
    assert result.exit_code == 2


@pytest.mark.integration
def test_fit_uni_writes_outputs_and_reruns_from_manifest(toy_yaml, tmp_path):
    path = toy_yaml()
    first = tmp_path / "first"
    result = runner.invoke(app, ["fit-uni", str(path), "--iters", "150", "-o", str(first)])
    assert result.exit_code == 0, result.output
    assert sorted(p.name for p in first.iterdir()) == ["chain.csv", "manifest.json", "summary.json"]

    manifest = json.loads((first / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "fit-uni"
    assert manifest["config"]["sampler"]["iters"] == 150

    second = tmp_path / "second"
    result = runner.invoke(
        app, ["fit-uni", "--from-manifest", str(first / "manifest.json"), "-o", str(second)]
    )
    assert result.exit_code == 0, result.output
    assert (first / "chain.csv").read_text(encoding="utf-8") == (second / "chain.csv").read_text(
        encoding="utf-8"
    )


@pytest.mark.integration
def test_fit_uni_rejects_changed_data(toy_yaml, tmp_path):
    path = toy_yaml()
    out = tmp_path / "out"
    assert runner.invoke(app, ["fit-uni", str(path), "--iters", "120", "-o", str(out)]).exit_code == 0
    with (tmp_path / "toy.csv").open("a", encoding="utf-8") as f:
        f.write("0,0,0,0,0\n")
    result = runner.invoke(app, ["fit-uni", "--from-manifest", str(out / "manifest.json")])
    assert result.exit_code == 2


@pytest.mark.integration
def test_replicate_and_rerun_from_manifest(tmp_path):
    first = tmp_path / "first"
    args = ["replicate", "example1-r1", "--replications", "1", "--iters", "120", "--seed", "3"]
    result = runner.invoke(app, [*args, "-o", str(first)])
    assert result.exit_code == 0, result.output
    names = sorted(p.name for p in first.iterdir())
    assert names == ["manifest.json", "replications.csv", "report.json"]

    second = tmp_path / "second"
    result = runner.invoke(
        app, ["replicate", "--from-manifest", str(first / "manifest.json"), "-o", str(second)]
    )
    assert result.exit_code == 0, result.output
    pd.testing.assert_frame_equal(
        pd.read_csv(first / "replications.csv"), pd.read_csv(second / "replications.csv")
    )


@pytest.mark.integration
def test_diagnose_writes_acf_files(toy_yaml, tmp_path):
    out = tmp_path / "fit"
    assert runner.invoke(app, ["fit-uni", str(toy_yaml()), "-o", str(out)]).exit_code == 0
    diag = tmp_path / "diag"
    result = runner.invoke(
        app, ["diagnose", str(out / "chain.csv"), "--max-lag", "10", "-o", str(diag)]
    )
    assert result.exit_code == 0, result.output
    assert (diag / "acf_beta_1.csv").exists()
    assert (diag / "summary.json").exists()
    acf = pd.read_csv(diag / "acf_sigma2.csv")
    assert len(acf) == 11
    assert np.isclose(acf.iloc[0, -1], 1.0)


def test_diagnose_lag_too_large(tmp_path):
    chain = tmp_path / "chain.csv"
    chain.write_text("sigma2,beta_1\n1.0,0.5\n1.1,0.4\n0.9,0.6\n", encoding="utf-8")
    result = runner.invoke(app, ["diagnose", str(chain), "--max-lag", "5", "-o", str(tmp_path / "d")])
    assert result.exit_code == 2


def test_diagnose_missing_chain(tmp_path):
    result = runner.invoke(app, ["diagnose", str(tmp_path / "chain.csv")])
    assert result.exit_code == 2


def test_unexpected_failure_exits_one(mocker, tmp_path):
    app_module = importlib.import_module("restricted_regression.cli.app")
    mocker.patch.object(app_module, "run_study", side_effect=RuntimeError("boom"))
    result = runner.invoke(app, ["replicate", "example1-r1", "-o", str(tmp_path)])
    assert result.exit_code == 1
