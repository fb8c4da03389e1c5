"""Builders for sweep records used by the analysis and sweep tests."""

from certiq.constants import RunStatus
from certiq.models.certification import MetricsReport
from certiq.models.sweep import SweepRecord


def completed_record(run_id: str, accuracy: float, cagm: float, semi_axis_std: float = 0.0,
                     index: int = 0) -> SweepRecord:
    return SweepRecord(
        run_id=run_id,
        index=index,
        hyperparameters={"population": 10, "eta_theta": 0.1},
        status=RunStatus.COMPLETED,
        metrics=MetricsReport(cagm=cagm, semi_axis_avg=cagm / 2, semi_axis_std=semi_axis_std,
                              smoothed_accuracy=accuracy),
    )


def failed_record(run_id: str, index: int = 0) -> SweepRecord:
    return SweepRecord(run_id=run_id, index=index, hyperparameters={}, status=RunStatus.FAILED,
                       error={"error": "NumericalError"})
