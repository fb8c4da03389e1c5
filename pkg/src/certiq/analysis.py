"""Robustness/accuracy frontier and semi-axis spread analyses over sweep records."""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from .constants import RobustnessMetric, RunStatus
from .exceptions import InsufficientRecordsError, InvalidConfigurationError
from .models.sweep import (
    CorrelationBin, CorrelationResult, FrontierPoint, FrontierResult, LinearFit, SweepRecord
)

logger = logging.getLogger(__name__)

DEFAULT_BIN_WIDTH = 0.02
DEFAULT_CORRELATION_BINS = 10
_BIN_EPS = 1e-9


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    """Least-squares line through the points; undefined with fewer than two distinct x."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.size < 2 or np.unique(xs).size < 2:
        return LinearFit(defined=False, points=int(xs.size),
                         reason="need at least two distinct x values")
    slope, intercept = np.polyfit(xs, ys, 1)
    return LinearFit(defined=True, slope=float(slope), intercept=float(intercept),
                     points=int(xs.size))


def _completed(records: Sequence[SweepRecord]) -> List[SweepRecord]:
    return [r for r in records if r.status == RunStatus.COMPLETED and r.metrics is not None]


def accuracy_bin(accuracy: float, bin_width: float) -> int:
    return int(math.floor(accuracy / bin_width + _BIN_EPS))


def frontier_extract(records: Sequence[SweepRecord], metric: RobustnessMetric,
                     bin_width: float = DEFAULT_BIN_WIDTH) -> FrontierResult:
    """Best-metric run per accuracy bin, kept only where no higher bin beats it.

    Args:
        records: Sweep records (non-completed ones are ignored)
        metric: Robustness metric on the y axis
        bin_width: Width of the smoothed-accuracy bins

    Returns:
        Frontier points in ascending accuracy and a line fitted through them

    Raises:
        InsufficientRecordsError: With fewer than two completed records
    """
    if bin_width <= 0:
        raise InvalidConfigurationError("bin_width", bin_width, "must be positive")
    done = _completed(records)
    if len(done) < 2:
        raise InsufficientRecordsError("frontier", len(done), 2)

    best: Dict[int, SweepRecord] = {}
    for r in done:
        b = accuracy_bin(r.metrics.smoothed_accuracy, bin_width)
        if b not in best or r.metric(metric) > best[b].metric(metric):
            best[b] = r

    kept: List[FrontierPoint] = []
    running = -math.inf
    for b in sorted(best, reverse=True):
        r = best[b]
        value = r.metric(metric)
        if value >= running:
            kept.append(FrontierPoint(
                accuracy_bin=b, bin_low=b * bin_width,
                accuracy=r.metrics.smoothed_accuracy, metric_value=value, run_id=r.run_id,
            ))
        running = max(running, value)
    kept.reverse()

    fit = linear_fit([p.accuracy for p in kept], [p.metric_value for p in kept])
    logger.info("Frontier over %d runs keeps %d of %d bins", len(done), len(kept), len(best))
    return FrontierResult(metric=metric, bin_width=bin_width, points=kept, fit=fit)


def correlation_extract(records: Sequence[SweepRecord], metric: RobustnessMetric,
                        min_accuracy: Optional[float] = None,
                        n_bins: int = DEFAULT_CORRELATION_BINS,
                        bin_width: float = DEFAULT_BIN_WIDTH) -> CorrelationResult:
    """Semi-axis standard deviation against a robustness metric for accurate runs.

    Args:
        records: Sweep records
        metric: Robustness metric to bin by
        min_accuracy: Accuracy filter; defaults to the lowest frontier accuracy
        n_bins: Number of equal-width metric bins
        bin_width: Accuracy bin width used when deriving the default filter

    Raises:
        InsufficientRecordsError: If no record passes the filter
    """
    if n_bins < 1:
        raise InvalidConfigurationError("n_bins", n_bins, "must be at least 1")
    if min_accuracy is None:
        min_accuracy = frontier_extract(records, metric, bin_width).min_accuracy

    kept = [r for r in _completed(records) if r.metrics.smoothed_accuracy >= min_accuracy - _BIN_EPS]
    if not kept:
        raise InsufficientRecordsError("correlation", 0, 1)

    values = np.array([r.metric(metric) for r in kept])
    spreads = np.array([r.metrics.semi_axis_std for r in kept])
    low, high = float(values.min()), float(values.max())
    if high > low:
        width = (high - low) / n_bins
        index = np.minimum(np.floor((values - low) / width).astype(int), n_bins - 1)
    else:
        width = 0.0
        index = np.zeros(values.size, dtype=int)

    bins: List[CorrelationBin] = []
    for i in np.unique(index):
        members = index == i
        bins.append(CorrelationBin(
            index=int(i),
            metric_low=low + i * width,
            metric_high=low + (i + 1) * width if width else high,
            metric_mean=float(values[members].mean()),
            semi_axis_std_mean=float(spreads[members].mean()),
            semi_axis_std_std=float(spreads[members].std()),
            count=int(members.sum()),
        ))

    return CorrelationResult(
        metric=metric, min_accuracy=float(min_accuracy), records_used=len(kept),
        bins=bins, fit=linear_fit(values, spreads),
    )
