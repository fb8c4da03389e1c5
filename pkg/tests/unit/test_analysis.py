"""Unit tests for the frontier and semi-axis correlation analyses."""

import numpy as np
import pytest

from certiq.analysis import accuracy_bin, correlation_extract, frontier_extract, linear_fit
from certiq.constants import RobustnessMetric
from certiq.exceptions import InsufficientRecordsError, InvalidConfigurationError
from tests.helpers.records import completed_record, failed_record

CAGM = RobustnessMetric.CAGM


class TestLinearFit:
    def test_exact_line(self):
        fit = linear_fit([0.0, 1.0, 2.0], [0.0, 1.0, 2.0])

        assert fit.defined
        assert fit.slope == pytest.approx(1.0)
        assert fit.intercept == pytest.approx(0.0, abs=1e-12)
        assert fit.points == 3

    def test_single_x_is_undefined(self):
        fit = linear_fit([0.5, 0.5], [1.0, 2.0])

        assert not fit.defined
        assert fit.slope is None
        assert fit.reason


@pytest.mark.unit
class TestFrontier:
    """Test frontier extraction."""

    def test_best_per_bin(self):
        """Test that each bin keeps its best run and points are ordered by accuracy."""
        records = [
            completed_record("a", 0.9, 1.0),
            completed_record("b", 0.9, 2.0),
            completed_record("c", 0.8, 3.0),
        ]

        result = frontier_extract(records, CAGM)

        assert [(p.accuracy, p.metric_value) for p in result.points] == [(0.8, 3.0), (0.9, 2.0)]
        assert [p.run_id for p in result.points] == ["c", "b"]
        assert result.fit.defined
        assert result.fit.slope == pytest.approx(-10.0)

    def test_dominated_bin_removed(self):
        """Test that a bin beaten by a more accurate bin is dropped."""
        records = [completed_record("a", 0.9, 5.0), completed_record("b", 0.8, 3.0)]

        result = frontier_extract(records, CAGM)

        assert [p.run_id for p in result.points] == ["a"]
        assert not result.fit.defined
        assert result.min_accuracy == 0.9

    def test_semi_axis_metric(self):
        records = [completed_record("a", 0.9, 1.0), completed_record("b", 0.7, 4.0)]

        result = frontier_extract(records, RobustnessMetric.SEMI_AXIS_AVG)

        assert [p.metric_value for p in result.points] == [2.0, 0.5]

    def test_failed_records_ignored(self):
        records = [completed_record("a", 0.9, 1.0), failed_record("x"),
                   completed_record("b", 0.5, 2.0)]

        result = frontier_extract(records, CAGM)

        assert {p.run_id for p in result.points} == {"a", "b"}

    def test_too_few_records(self):
        with pytest.raises(InsufficientRecordsError):
            frontier_extract([completed_record("a", 0.9, 1.0), failed_record("x")], CAGM)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_dominance_on_synthetic_sweep(self, seed):
        """Test the frontier of 1000 random runs against a brute-force dominance check."""
        rng = np.random.default_rng(seed)
        records = [
            completed_record(f"r{i}", float(acc), float(cagm), index=i)
            for i, (acc, cagm) in enumerate(zip(rng.uniform(0.3, 1.0, 1000), rng.exponential(1.0, 1000)))
        ]

        result = frontier_extract(records, CAGM)

        best = {}
        for r in records:
            b = accuracy_bin(r.metrics.smoothed_accuracy, result.bin_width)
            if b not in best or r.metrics.cagm > best[b].metrics.cagm:
                best[b] = r
        kept = {p.accuracy_bin: p for p in result.points}
        for b, r in best.items():
            beaten = any(other.metrics.cagm > r.metrics.cagm for ob, other in best.items() if ob > b)
            assert (b in kept) != beaten, f"bin {b}"
            if b in kept:
                assert kept[b].run_id == r.run_id
        values = [p.metric_value for p in result.points]
        assert all(a >= b for a, b in zip(values, values[1:]))
        accuracies = [p.accuracy for p in result.points]
        assert accuracies == sorted(accuracies)

    def test_bin_width_validated(self):
        records = [completed_record("a", 0.9, 1.0), completed_record("b", 0.8, 2.0)]
        with pytest.raises(InvalidConfigurationError):
            frontier_extract(records, CAGM, bin_width=0.0)


@pytest.mark.unit
class TestCorrelation:
    """Test semi-axis spread against the robustness metric."""

    def test_linear_relation_recovered(self):
        """Test that the fit recovers an exact linear spread relation."""
        records = [
            completed_record(f"r{i}", 0.9, cagm, semi_axis_std=2.0 * cagm + 1.0, index=i)
            for i, cagm in enumerate([0.1, 0.2, 0.35, 0.5, 0.8])
        ]

        result = correlation_extract(records, CAGM, min_accuracy=0.5, n_bins=4)

        assert result.records_used == 5
        assert result.fit.slope == pytest.approx(2.0, abs=1e-9)
        assert result.fit.intercept == pytest.approx(1.0, abs=1e-9)
        assert sum(b.count for b in result.bins) == 5
        assert [b.index for b in result.bins] == sorted(b.index for b in result.bins)

    def test_identical_records_share_one_bin(self):
        records = [completed_record(f"r{i}", 0.9, 1.0, semi_axis_std=0.3) for i in range(3)]

        result = correlation_extract(records, CAGM, min_accuracy=0.5)

        assert len(result.bins) == 1
        assert result.bins[0].count == 3
        assert result.bins[0].semi_axis_std_std == pytest.approx(0.0, abs=1e-12)
        assert not result.fit.defined

    def test_accuracy_filter(self):
        records = [
            completed_record("a", 0.9, 1.0, 0.1),
            completed_record("b", 0.95, 2.0, 0.2),
            completed_record("c", 0.4, 3.0, 0.3),
        ]

        result = correlation_extract(records, CAGM, min_accuracy=0.8)

        assert result.records_used == 2

    def test_default_filter_from_frontier(self):
        """Test that the accuracy filter defaults to the lowest frontier accuracy."""
        records = [
            completed_record("a", 0.9, 1.0, 0.1),
            completed_record("b", 0.7, 5.0, 0.2),
            completed_record("c", 0.5, 0.5, 0.3),
        ]

        result = correlation_extract(records, CAGM)

        assert result.min_accuracy == 0.7
        assert result.records_used == 2

    def test_nothing_passes_filter(self):
        records = [completed_record("a", 0.6, 1.0), completed_record("b", 0.5, 2.0)]
        with pytest.raises(InsufficientRecordsError):
            correlation_extract(records, CAGM, min_accuracy=0.99)
