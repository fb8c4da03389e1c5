"""Certified hyper-ellipsoid geometry and dataset-level robustness metrics."""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaln

from .exceptions import InvalidConfigurationError
from .models.certification import CertificationResult, MetricsReport

logger = logging.getLogger(__name__)


def ellipsoid_contains(delta: np.ndarray, sigma: np.ndarray, s_e: float) -> bool:
    """True iff sum_i delta_i^2 / (s_e sigma_i)^2 < 1 (strict)."""
    if s_e <= 0.0:
        return False
    scaled = np.asarray(delta, dtype=np.float64) / (s_e * np.asarray(sigma, dtype=np.float64))
    return bool(np.dot(scaled, scaled) < 1.0)


def _log_unit_ball_volume(dim: int) -> float:
    return math.log(2.0) + 0.5 * dim * math.log(math.pi) - math.log(dim) - float(gammaln(0.5 * dim))


def log_semi_axes_volume(semi_axes: np.ndarray) -> float:
    """log of the volume of an ellipsoid with the given semi-axes."""
    axes = np.asarray(semi_axes, dtype=np.float64)
    if axes.size == 0:
        raise InvalidConfigurationError("semi_axes", 0, "need at least one axis")
    if np.any(axes <= 0.0):
        return -math.inf
    return _log_unit_ball_volume(axes.size) + float(np.sum(np.log(axes)))


def log_certified_volume(sigma: np.ndarray, s_e: float) -> float:
    """log V with V = 2 pi^{D/2} / (D Gamma(D/2)) * prod_i s_e sigma_i; -inf when s_e = 0."""
    if s_e < 0.0:
        raise InvalidConfigurationError("s_e", s_e, "must be non-negative")
    if s_e == 0.0:
        return -math.inf
    return log_semi_axes_volume(s_e * np.asarray(sigma, dtype=np.float64))


def certified_volume(sigma: np.ndarray, s_e: float) -> float:
    return math.exp(log_certified_volume(sigma, s_e))


def metrics_report(results: Sequence[CertificationResult],
                   deployed_accuracy: Optional[float] = None) -> MetricsReport:
    """Average the per-sample ellipsoid metrics over a certified dataset.

    Abstentions are counted as incorrect and contribute zero volume and zero
    semi-axes.

    Raises:
        InvalidConfigurationError: If results is empty
    """
    if not results:
        raise InvalidConfigurationError("results", 0, "cannot report on an empty result set")
    cagm = []
    avg = []
    std = []
    for r in results:
        if r.abstained or not r.semi_axes:
            cagm.append(0.0)
            avg.append(0.0)
            std.append(0.0)
            continue
        axes = np.asarray(r.semi_axes)
        cagm.append(math.exp(log_semi_axes_volume(axes) / axes.size))
        avg.append(float(np.mean(axes)))
        std.append(float(np.std(axes)))
    correct = sum(r.correct for r in results)
    abstentions = sum(r.abstained for r in results)
    report = MetricsReport(
        cagm=float(np.mean(cagm)),
        semi_axis_avg=float(np.mean(avg)),
        semi_axis_std=float(np.mean(std)),
        smoothed_accuracy=correct / len(results),
        abstentions=abstentions,
        samples=len(results),
        deployed_accuracy=deployed_accuracy,
    )
    logger.info("Smoothed accuracy %.3f, CAGM %.3e over %d samples",
                report.smoothed_accuracy, report.cagm, report.samples)
    return report
