"""Unit tests for hyperparameter sampling, the run journal and sweep tables."""

import pytest

from certiq import sweep as sweep_module
from certiq.config import get_config_loader
from certiq.constants import RegularizerKind, RobustnessMetric, RunStatus
from certiq.exceptions import ConfigurationError, InvalidConfigurationError
from certiq.journal import RunJournal, run_id_for
from certiq.models.certification import CertificationSettings
from certiq.models.training import SnesConfig
from certiq.rng import RandomStreams
from certiq.sweep import (
    SWEEP_CSV_COLUMNS, load_sweep_records, parse_search_space, plan_runs, run_sweep,
    sample_hyperparameters, sweep_csv_rows
)
from certiq.utils import write_csv
from tests.helpers.records import completed_record, failed_record


@pytest.fixture
def shipped_space():
    return parse_search_space(get_config_loader().load_hp_search_space())


class TestSearchSpace:
    """Test search-space parsing and sampling."""

    def test_unknown_hyperparameter_rejected(self):
        with pytest.raises(InvalidConfigurationError):
            parse_search_space({"temperature": {"kind": "uniform", "low": 0, "high": 1}})

    def test_unknown_kind_rejected(self):
        with pytest.raises(InvalidConfigurationError):
            parse_search_space({"sigma0": {"kind": "gaussian", "low": 0, "high": 1}})

    def test_log_uniform_needs_positive_bounds(self):
        with pytest.raises(InvalidConfigurationError):
            parse_search_space({"eta_r": {"kind": "log_uniform", "low": 0, "high": 1}})

    def test_samples_stay_in_bounds(self, shipped_space):
        """Test that every draw respects the shipped ranges."""
        streams = RandomStreams(5)
        for i in range(50):
            values = sample_hyperparameters(shipped_space, streams.stream("hp", i))
            assert 10 <= values["population"] <= 40
            assert isinstance(values["population"], int)
            assert 0.001 <= values["eta_sigma"] <= 0.1
            assert 0.02 <= values["eta_theta"] <= 1.0
            assert 1e-6 <= values["eta_r"] <= 0.01
            assert 0.01 <= values["sigma0"] <= 0.5
            assert values["reg_kind"] in ("L2", "AREA")

    def test_plan_is_prefix_stable(self, shipped_space):
        """Test that growing the budget does not change earlier runs."""
        base = SnesConfig()
        short = plan_runs(base, shipped_space, 2, RandomStreams(9))
        long = plan_runs(base, shipped_space, 5, RandomStreams(9))

        assert long[:2] == short
        assert len({c.seed for c in long}) == 5

    def test_planned_configs_are_validated(self, shipped_space):
        configs = plan_runs(SnesConfig(iterations=7), shipped_space, 3, RandomStreams(1))

        assert all(isinstance(c, SnesConfig) for c in configs)
        assert all(c.iterations == 7 for c in configs)
        assert all(c.reg_kind in (RegularizerKind.L2, RegularizerKind.AREA) for c in configs)


class TestRunJournal:
    """Test the append-only journal."""

    def test_missing_journal_is_empty(self, tmp_path):
        assert RunJournal(tmp_path / "journal.jsonl").records() == []

    def test_latest_keeps_last_record_per_run(self, tmp_path):
        journal = RunJournal(tmp_path / "journal.jsonl")
        journal.append(failed_record("a", index=1))
        journal.append(completed_record("b", 0.8, 1.0, index=0))
        journal.append(completed_record("a", 0.9, 2.0, index=1))

        latest = journal.latest()

        assert [r.run_id for r in latest] == ["b", "a"]
        assert latest[1].status == RunStatus.COMPLETED
        assert journal.completed_ids() == {"a", "b"}

    def test_torn_line_skipped(self, tmp_path):
        """Test that an interrupted write does not corrupt later records."""
        path = tmp_path / "journal.jsonl"
        journal = RunJournal(path)
        journal.append(completed_record("a", 0.9, 1.0))
        with open(path, "a", encoding="utf-8") as f:
            f.write('{"run_id": "b", "ind')
        journal.append(completed_record("c", 0.8, 2.0, index=2))

        assert [r.run_id for r in journal.records()] == ["a", "c"]

    def test_inconsistent_record_skipped(self, tmp_path):
        path = tmp_path / "journal.jsonl"
        path.write_text('{"run_id": "a", "index": 0, "hyperparameters": {}, "status": "completed"}\n')

        assert RunJournal(path).records() == []

    def test_run_id_is_stable(self):
        config = SnesConfig(seed=3).model_dump(mode="json")

        assert run_id_for(config, 3) == run_id_for(dict(config), 3)
        assert run_id_for(config, 3) != run_id_for(config, 4)


@pytest.mark.integration
class TestRunSweep:
    """Test the sweep loop on a tiny budget."""

    def test_resume_skips_completed_runs(self, qcnn4, toy_samples, tmp_path):
        """Test that rerunning a sweep only executes missing runs."""
        circuit, readout = qcnn4
        base = SnesConfig(population=2, iterations=1, batch_size=2, sigma0=0.05)
        space = parse_search_space({"sigma0": {"kind": "log_uniform", "low": 0.01, "high": 0.1}})
        configs = plan_runs(base, space, 2, RandomStreams(4))
        cert = CertificationSettings(n0=4, n=8, alpha=0.1)
        journal = RunJournal(tmp_path / "journal.jsonl")

        first = run_sweep(configs[:1], circuit, readout, toy_samples[:4], toy_samples[4:6], cert, journal)
        second = run_sweep(configs, circuit, readout, toy_samples[:4], toy_samples[4:6], cert,
                           journal, threads=2)

        assert len(first) == 1
        assert [r.index for r in second] == [0, 1]
        assert all(r.status == RunStatus.COMPLETED for r in second)
        assert second[0] == first[0]
        assert len(journal.records()) == 2

    def test_unexpected_error_fails_one_run_only(self, qcnn4, toy_samples, tmp_path, monkeypatch):
        """Test that a non-library exception is journalled as a failure and the sweep carries on."""
        circuit, readout = qcnn4
        base = SnesConfig(population=2, iterations=1, batch_size=2, sigma0=0.05)
        space = parse_search_space({"sigma0": {"kind": "log_uniform", "low": 0.01, "high": 0.1}})
        configs = plan_runs(base, space, 2, RandomStreams(4))
        cert = CertificationSettings(n0=4, n=8, alpha=0.1)
        journal = RunJournal(tmp_path / "journal.jsonl")
        real_train = sweep_module.train

        def flaky_train(circuit, readout, dataset, config):
            if config.seed == configs[0].seed:
                raise ValueError("singular minibatch")
            return real_train(circuit, readout, dataset, config)

        monkeypatch.setattr(sweep_module, "train", flaky_train)

        records = run_sweep(configs, circuit, readout, toy_samples[:4], toy_samples[4:6], cert, journal)

        assert [r.status for r in records] == [RunStatus.FAILED, RunStatus.COMPLETED]
        assert records[0].error["error"] == "ValueError"
        assert records[0].error["message"] == "singular minibatch"
        assert records[0].metrics is None
        assert len(journal.records()) == 2


class TestSweepTables:
    """Test sweep.csv rows and loading records back."""

    def test_csv_round_trip(self, tmp_path):
        records = [completed_record("a", 0.9, 1.5, 0.2), failed_record("b", index=1)]
        path = write_csv(tmp_path / "sweep.csv", SWEEP_CSV_COLUMNS, sweep_csv_rows(records))

        loaded = load_sweep_records(path)

        assert [r.run_id for r in loaded] == ["a", "b"]
        assert loaded[0].metrics.cagm == 1.5
        assert loaded[0].metrics.semi_axis_std == 0.2
        assert loaded[0].metrics.smoothed_accuracy == 0.9
        assert loaded[1].status == RunStatus.FAILED
        assert loaded[1].metrics is None

    def test_failed_rows_have_empty_metric_cells(self):
        row = sweep_csv_rows([failed_record("b")])[0]

        assert row[2] == "failed"
        assert row[-4:] == ["", "", "", ""]

    def test_journal_loaded_by_suffix(self, tmp_path):
        journal = RunJournal(tmp_path / "journal.jsonl")
        journal.append(completed_record("a", 0.9, 1.0))

        loaded = load_sweep_records(journal.path)

        assert loaded[0].metrics.semi_axis_avg == 0.5
        assert loaded[0].metric(RobustnessMetric.CAGM) == 1.0

    def test_missing_results(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_sweep_records(tmp_path / "nothing.csv")
