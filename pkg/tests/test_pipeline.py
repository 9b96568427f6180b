"""Tests for configured fits and run manifests."""

from dataclasses import replace

import pandas as pd
import pytest

from restricted_regression.config import SamplerConfig, SamplerSettings
from restricted_regression.config_loader import ConfigLoader
from restricted_regression.core.errors import ConfigError, DatasetError
from restricted_regression.distributions import RngStream
from restricted_regression.experiments import catalog
from restricted_regression.experiments.simulation import simulate_univariate
from restricted_regression.pipeline import (
    build_manifest,
    fit_multivariate,
    fit_univariate,
    read_manifest,
    resolve_sampler,
    write_fit_outputs,
    write_manifest,
)
from restricted_regression.restrictions import check_feasible

pytestmark = pytest.mark.integration


@pytest.fixture
def toy_config(tmp_path):
    data = simulate_univariate(catalog.EXAMPLE1_BETA, 1.0, 40, RngStream(3))
    frame = pd.DataFrame(data.X[:, 1:], columns=["x1", "x2", "x3", "x4"])
    frame.insert(0, "y", data.Y)
    frame.to_csv(tmp_path / "toy.csv", index=False)
    return ConfigLoader.parse(
        {
            "name": "toy",
            "model": "univariate",
            "data": {"path": "toy.csv", "response": ["y"], "predictors": ["x1", "x2", "x3", "x4"]},
            "restrictions": {
                "H": [[0, 1, 1, 0, 0], [0, 1, 0, 1, -1], [0, 0, 1, 0, 1]],
                "G": [-0.5, 0.2, 2.2],
            },
            "prior": {"a": 6, "b": 2},
            "sampler": {"iters": 400, "seed": 5},
        },
        base_dir=tmp_path,
    )


def test_resolve_sampler_applies_overrides(toy_config):
    settings = SamplerSettings(inner_sweeps=3)
    resolved = resolve_sampler(toy_config, settings, iters=1000, seed=8)
    assert resolved.sampler == SamplerConfig(iters=1000, burn_in=100, seed=8, inner_sweeps=3)
    assert toy_config.sampler.iters == 400


def test_fit_univariate(toy_config):
    result = fit_univariate(toy_config, SamplerSettings())
    assert len(result.chain) == 400
    assert result.chain.burn_in == 40
    assert result.summary.draws == 360
    system = toy_config.restrictions.system
    assert all(check_feasible(b, system) for b in result.chain.beta)


def test_fit_univariate_rejects_multivariate_config():
    with pytest.raises(ConfigError):
        fit_univariate(ConfigLoader.load_by_name("chemical"))


def test_fit_univariate_rejects_many_responses(toy_config, chemical_path):
    config = replace(
        toy_config,
        data=replace(
            toy_config.data,
            path=chemical_path,
            response=["y1", "y2"],
            predictors=["x1", "x2", "x3"],
        ),
    )
    with pytest.raises(DatasetError, match="one response"):
        fit_univariate(config)


def test_fit_multivariate_chemical():
    config = ConfigLoader.load_by_name("chemical")
    config = replace(config, sampler=replace(config.sampler, iters=300))
    result = fit_multivariate(config)
    assert result.chain.beta.shape == (300, 4, 3)
    assert result.partition.S == (2, 3)
    system = config.restrictions.system
    assert all(check_feasible(B, system) for B in result.chain.beta)
    assert result.summary.parameters[0].name == "sigma_11"


def test_outputs_and_manifest(toy_config, tmp_path):
    settings = SamplerSettings()
    result = fit_univariate(toy_config, settings)
    written = write_fit_outputs(result, tmp_path / "run")
    assert [p.name for p in written] == ["chain.csv", "summary.json"]
    manifest = build_manifest(
        "fit-uni",
        result.config.to_dict(settings),
        result.config.sampler.seed,
        inputs=[result.dataset.source],
        outputs=written,
        seconds=0.5,
    )
    path = write_manifest(manifest, tmp_path / "run" / "manifest.json")
    restored = read_manifest(path)
    assert restored == manifest
    assert restored.config["sampler"]["burn_in"] == 40
    assert ConfigLoader.validate(restored.config) == []


def test_manifest_detects_changed_input(toy_config, tmp_path):
    settings = SamplerSettings()
    result = fit_univariate(toy_config, settings)
    manifest = build_manifest(
        "fit-uni",
        result.config.to_dict(settings),
        5,
        inputs=[result.dataset.source],
        outputs=[],
        seconds=0.0,
    )
    path = write_manifest(manifest, tmp_path / "manifest.json")
    with result.dataset.source.open("a", encoding="utf-8") as f:
        f.write("1,1,1,1,1\n")
    with pytest.raises(ConfigError, match="changed"):
        read_manifest(path)


def test_read_manifest_missing(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        read_manifest(tmp_path / "manifest.json")
