"""Tests for replication studies and real-data analyses."""

from dataclasses import replace
import json

import numpy as np
import pandas as pd
import pytest

from restricted_regression.config import MultivariatePriorConfig, SamplerSettings
from restricted_regression.core.errors import (
    DatasetError,
    InvalidParameterError,
    ModelError,
    NotSquareError,
    ShapeMismatchError,
    SingularError,
    UnknownStudyError,
)
from restricted_regression.experiments import (
    Method,
    RealDataConfig,
    Study,
    catalog,
    example1_config,
    example2_config,
    run_chemical_analysis,
    run_delta_sweep,
    run_rent_analysis,
    run_simulation,
    run_study,
    write_study_outputs,
)
from restricted_regression.experiments.studies import replicate_once
from restricted_regression.restrictions import check_feasible


def test_study_parse():
    assert Study.parse("delta-sweep") is Study.DELTA_SWEEP
    assert Study.parse(Study.RENT) is Study.RENT


def test_study_parse_lists_choices():
    with pytest.raises(UnknownStudyError, match="example1-r1"):
        Study.parse("example3")


class TestSimulationConfig:
    def test_rejects_zero_replications(self):
        with pytest.raises(InvalidParameterError):
            example1_config(1, replications=0)

    def test_rejects_unknown_restriction(self):
        with pytest.raises(InvalidParameterError):
            example1_config(3)

    def test_baseline_needs_square_system(self):
        with pytest.raises(NotSquareError):
            example1_config(1, methods=(Method.BKS, Method.GEWEKE))

    def test_baseline_without_square_system_at_fit_time(self):
        config = example1_config(2, replications=1, iterations=50, methods=(Method.GEWEKE,))
        object.__setattr__(config, "geweke_system", None)
        with pytest.raises(NotSquareError, match="square"):
            replicate_once((config, 0, None))

    def test_prior_must_match_truth(self):
        with pytest.raises(ShapeMismatchError):
            replace(example1_config(1), prior=MultivariatePriorConfig(r=2.0))

    def test_burn_in_checked(self):
        with pytest.raises(InvalidParameterError):
            example1_config(1, iterations=100, burn_in=100)

    def test_parameter_names(self):
        assert example1_config(1).parameter_names()[:2] == ["sigma2", "beta_1"]
        names = example2_config().parameter_names()
        assert names[:4] == ["sigma_11", "sigma_12", "sigma_21", "sigma_22"]
        assert names[4] == "beta_11"
        assert len(names) == 4 + 10


@pytest.mark.integration
class TestSmallRuns:
    def test_example1_report_shape(self):
        config = example1_config(2, replications=2, iterations=200, seed=11)
        result = run_simulation(config, Study.EXAMPLE1_R2.value)
        report = result.report
        assert [m.method for m in report.methods] == ["bks", "geweke"]
        bks = report.method("bks")
        assert bks.replications == 2
        assert bks.failed == 0
        assert [p.name for p in bks.parameters][:2] == ["sigma2", "beta_1"]
        assert bks.parameters[1].truth == -0.5
        assert bks.mse is not None
        assert bks.seconds_per_iteration is not None
        assert len(result.replications) == 2 * 2 * 6

    def test_replications_are_reproducible(self):
        config = example1_config(1, replications=2, iterations=150, seed=4)
        first = run_simulation(config, "example1-r1")
        second = run_simulation(config, "example1-r1")
        pd.testing.assert_frame_equal(first.replications, second.replications)

    def test_fixed_design(self):
        config = example1_config(1, replications=2, iterations=150, fresh_design=False)
        result = run_simulation(config, "example1-r1")
        assert result.report.metadata["fresh_design"] is False

    def test_unrestricted_method(self):
        config = example1_config(1, replications=1, iterations=150, methods=(Method.UNRESTRICTED,))
        report = run_simulation(config, "example1-r1").report
        unrestricted = report.method("unrestricted")
        assert unrestricted.seconds_per_iteration is None
        assert unrestricted.parameters[0].se == 0.0

    def test_example2_small(self):
        config = example2_config(replications=1, iterations=200, seed=2)
        report = run_simulation(config, "example2").report
        bks = report.method("bks")
        estimates = {p.name: p.estimate for p in bks.parameters}
        assert estimates["sigma_12"] == pytest.approx(estimates["sigma_21"])
        assert bks.sigma_mse is not None

    def test_delta_sweep_small(self):
        config = example1_config(1, replications=2, iterations=150, seed=3)
        result = run_delta_sweep([-1.0, 0.0, 1.0], config)
        points = result.report.delta_sweep
        assert [p.delta for p in points] == [-1.0, 0.0, 1.0]
        assert all(p.re > 0 for p in points)
        assert points[0].mse_unrestricted == points[2].mse_unrestricted
        assert result.config["deltas"] == [-1.0, 0.0, 1.0]
        assert set(result.replications["method"]) == {"unrestricted", "bks"}

    @pytest.mark.parametrize("deltas", [[], [1.5]])
    def test_delta_sweep_rejects_bad_grid(self, deltas):
        with pytest.raises(InvalidParameterError):
            run_delta_sweep(deltas, example1_config(1, replications=1, iterations=150))

    def test_run_study_uses_desk_settings(self):
        settings = SamplerSettings(desk_replications=1, desk_iterations=120)
        result = run_study("example1-r1", seed=9, settings=settings)
        assert result.report.scale == "desk"
        assert result.report.replications == 1
        assert result.report.iterations == 120
        assert result.config["burn_in"] == 12

    def test_run_study_unknown(self):
        with pytest.raises(UnknownStudyError):
            run_study("example3")

    def test_write_outputs(self, tmp_path):
        config = example1_config(1, replications=1, iterations=150)
        result = run_delta_sweep([0.0, 0.5], config)
        written = write_study_outputs(result, tmp_path / "out")
        assert [p.name for p in written] == ["report.json", "replications.csv", "delta_sweep.csv"]
        report = json.loads(written[0].read_text(encoding="utf-8"))
        assert report["study"] == "delta-sweep"
        sweep = pd.read_csv(written[2])
        assert list(sweep.columns) == ["delta", "re"]

    def test_chemical_analysis_writes_chains(self, tmp_path):
        result = run_chemical_analysis(RealDataConfig(iterations=300, seed=1))
        chain = result.chains["bks"]
        assert all(check_feasible(B, catalog.chemical_system()) for B in chain.beta)
        names = [p.name for p in write_study_outputs(result, tmp_path)]
        assert names == ["report.json", "chain_bks.csv", "summary_bks.json"]
        assert result.report.metadata["n"] == 19

    def test_rent_analysis_missing_data(self, tmp_path):
        with pytest.raises(DatasetError):
            run_rent_analysis(RealDataConfig(iterations=200, data_path=tmp_path / "rent.csv"))


@pytest.mark.slow
class TestDeskScale:
    def test_example1_restriction1(self):
        report = run_study(Study.EXAMPLE1_R1, seed=1).report
        bks = report.method("bks")
        assert 0.03 <= bks.mse <= 0.12
        for parameter in bks.parameters[1:]:
            assert parameter.estimate == pytest.approx(parameter.truth, abs=0.1)
        assert 0.6 <= bks.parameters[0].estimate <= 1.0

    def test_example1_restriction2_timing(self):
        report = run_study(Study.EXAMPLE1_R2, seed=2).report
        bks = report.method("bks")
        geweke = report.method("geweke")
        assert 0.03 <= bks.mse <= 0.12
        assert bks.seconds_per_iteration < geweke.seconds_per_iteration

    def test_delta_sweep(self):
        points = run_study(Study.DELTA_SWEEP, seed=3).report.delta_sweep
        re = {round(p.delta, 1): p.re for p in points}
        assert all(re[d] > 1.0 for d in (0.2, 0.6, 1.0))
        assert re[-1.0] < re[0.0]
        assert -0.2 <= max(re, key=re.get) <= 0.2

    def test_example2(self):
        report = run_study(Study.EXAMPLE2, seed=4).report
        bks = report.method("bks")
        assert 0.35 <= bks.mse <= 0.85
        assert 0.15 <= bks.sigma_mse <= 0.55
        estimates = {p.name: p.estimate for p in bks.parameters}
        assert estimates["sigma_12"] == pytest.approx(estimates["sigma_21"])

    def test_chemical(self):
        bks = run_study(Study.CHEMICAL, seed=2024).report.method("bks")
        estimates = {p.name: p.estimate for p in bks.parameters}
        assert estimates["beta_11"] == pytest.approx(332.12, abs=3 * 9.12)
        assert estimates["sigma_11"] == pytest.approx(4.00, abs=3 * 1.27)

    def test_rent(self, rent_path):
        bks = run_study(Study.RENT, seed=5, data_path=rent_path).report.method("bks")
        estimates = np.array([p.estimate for p in bks.parameters[1:]])
        assert np.allclose(estimates[:3], [37.7037, 134.8952, 122.7444], atol=2.0)
        assert np.allclose(estimates[3:], [-0.6447, -1.1448], atol=0.2)


def test_all_failed_replications_raise(mocker):
    mocker.patch(
        "restricted_regression.experiments.studies._fit",
        side_effect=SingularError("degenerate replication"),
    )
    with pytest.raises(ModelError, match="all 2 replications failed"):
        run_simulation(example1_config(1, replications=2, iterations=50), "example1-r1")
