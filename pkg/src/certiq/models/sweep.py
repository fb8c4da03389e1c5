"""Pydantic models for hyperparameter sweeps and their analyses."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from ..constants import RobustnessMetric, RunStatus
from ..exceptions import InvalidConfigurationError
from .certification import MetricsReport


class SweepRecord(BaseModel):
    """One journalled sweep run."""

    run_id: str
    index: int = Field(ge=0, description="Position of the run in the sweep")
    hyperparameters: Dict[str, Any] = Field(description="SnesConfig snapshot")
    metrics: Optional[MetricsReport] = None
    status: RunStatus
    error: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def check_metrics(self) -> "SweepRecord":
        if (self.metrics is not None) != (self.status == RunStatus.COMPLETED):
            raise InvalidConfigurationError(
                "metrics", self.status.value, "metrics are present exactly for completed runs"
            )
        return self

    def metric(self, name: RobustnessMetric) -> float:
        if self.metrics is None:
            raise InvalidConfigurationError("metrics", None, f"run {self.run_id} has no metrics")
        return float(getattr(self.metrics, name.value))


class LinearFit(BaseModel):
    """Least-squares line y = slope * x + intercept, or the reason none exists."""

    defined: bool
    slope: Optional[float] = None
    intercept: Optional[float] = None
    points: int = 0
    reason: Optional[str] = None


class FrontierPoint(BaseModel):
    """Best run of one accuracy bin."""

    accuracy_bin: int = Field(description="floor(accuracy / bin_width)")
    bin_low: float
    accuracy: float
    metric_value: float
    run_id: str


class FrontierResult(BaseModel):
    metric: RobustnessMetric
    bin_width: float
    points: List[FrontierPoint]
    fit: LinearFit

    @property
    def min_accuracy(self) -> float:
        return min(p.accuracy for p in self.points)


class CorrelationBin(BaseModel):
    """Runs with a similar robustness metric and their semi-axis spread."""

    index: int
    metric_low: float
    metric_high: float
    metric_mean: float
    semi_axis_std_mean: float
    semi_axis_std_std: float
    count: int


class CorrelationResult(BaseModel):
    metric: RobustnessMetric
    min_accuracy: float
    records_used: int
    bins: List[CorrelationBin]
    fit: LinearFit


class NoiseSweepRow(BaseModel):
    """Accuracy of both models under one noise scale."""

    scale: float
    noise_norm: float = Field(description="Mean L2 norm of the drawn parameter noise")
    plain_accuracy: float
    plain_ci_low: float
    plain_ci_high: float
    smoothed_accuracy: float
    smoothed_ci_low: float
    smoothed_ci_high: float


class NoiseSweepSettings(BaseModel):
    scales: List[float] = Field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0, 4.0])
    draws: int = Field(100, ge=1)
    test_points: int = Field(20, ge=1)
    smoothing_samples: int = Field(100, ge=1)
    ci_method: str = "normal"
    confidence: float = Field(0.95, gt=0.0, lt=1.0)


class SearchDimension(BaseModel):
    """One axis of the hyperparameter search space."""

    kind: str = Field(description="int_uniform, uniform, log_uniform or choice")
    low: Optional[float] = None
    high: Optional[float] = None
    values: Optional[List[Any]] = None

    @model_validator(mode="after")
    def check_bounds(self) -> "SearchDimension":
        if self.kind == "choice":
            if not self.values:
                raise InvalidConfigurationError("values", self.values, "a choice needs values")
            return self
        if self.kind not in ("int_uniform", "uniform", "log_uniform"):
            raise InvalidConfigurationError("kind", self.kind, "unknown search dimension kind")
        if self.low is None or self.high is None or self.low > self.high:
            raise InvalidConfigurationError("bounds", (self.low, self.high), "need low <= high")
        if self.kind == "log_uniform" and self.low <= 0:
            raise InvalidConfigurationError("low", self.low, "log-uniform bounds must be positive")
        return self
