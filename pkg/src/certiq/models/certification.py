"""Pydantic models for smoothed classifiers, certificates and robustness metrics."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from ..constants import ABSTAIN, DEFAULT_PROB_CLAMP, PBoundMode, PredictMode
from ..exceptions import DimensionMismatchError, InvalidConfigurationError


class SmoothedModel(BaseModel):
    """Parameters theta with per-parameter smoothing scales sigma (Sigma = diag(sigma^2))."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    theta: np.ndarray = Field(description="Mean parameters in radians")
    sigma: np.ndarray = Field(description="Smoothing standard deviations in radians")

    @field_validator("theta", "sigma", mode="before")
    @classmethod
    def coerce_vector(cls, v):
        arr = np.array(v, dtype=np.float64).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def check_sigma(self) -> "SmoothedModel":
        if self.theta.shape != self.sigma.shape:
            raise DimensionMismatchError("sigma", self.theta.shape[0], self.sigma.shape[0])
        if not np.all(np.isfinite(self.theta)):
            raise InvalidConfigurationError("theta", "non-finite", "parameters must be finite")
        if not np.all(self.sigma > 0) or not np.all(np.isfinite(self.sigma)):
            raise InvalidConfigurationError(
                "sigma", float(np.min(self.sigma)), "every sigma must be finite and positive"
            )
        return self

    @field_serializer("theta", "sigma")
    def serialize_vector(self, v: np.ndarray) -> List[float]:
        return [float(x) for x in v]

    @property
    def dimension(self) -> int:
        return int(self.theta.shape[0])


class CertificationResult(BaseModel):
    """Outcome of certifying one input."""

    predicted_class: int = Field(description="Class index, or -1 for abstention")
    pA_lower: float = Field(ge=0.0, le=1.0)
    pB_upper: float = Field(ge=0.0, le=1.0)
    s_e: float = Field(ge=0.0, description="Robust scale; semi-axes are s_e * sigma")
    semi_axes: Tuple[float, ...] = ()
    shots_used: int = Field(ge=0)
    alpha: float
    counts: Tuple[int, ...] = Field((), description="Estimation-stage class counts")
    sample_index: Optional[int] = None
    label: Optional[int] = None

    @model_validator(mode="after")
    def check_certificate(self) -> "CertificationResult":
        if self.predicted_class != ABSTAIN and not (self.pA_lower > self.pB_upper and self.s_e > 0):
            raise InvalidConfigurationError(
                "predicted_class", self.predicted_class,
                "a certificate requires pA_lower > pB_upper and a positive radius"
            )
        return self

    @property
    def abstained(self) -> bool:
        return self.predicted_class == ABSTAIN

    @property
    def correct(self) -> bool:
        return not self.abstained and self.label is not None and self.predicted_class == self.label


class MetricsReport(BaseModel):
    """Dataset-level robustness metrics, all in radians except the accuracies."""

    cagm: float
    semi_axis_avg: float
    semi_axis_std: float
    smoothed_accuracy: float = Field(ge=0.0, le=1.0)
    abstentions: int = 0
    samples: int = 0
    deployed_accuracy: Optional[float] = Field(
        None, description="Accuracy of the mean-probability deployed classifier"
    )


class CertificationSettings(BaseModel):
    """Shot budgets and modes for certification and deployment."""

    n0: int = Field(100, ge=1, description="Selection shots")
    n: int = Field(1000, ge=1, description="Estimation shots")
    alpha: float = Field(0.01, gt=0.0, lt=1.0)
    pb_mode: PBoundMode = PBoundMode.COMPLEMENT
    predict_mode: PredictMode = PredictMode.COUNT_ARGMAX
    deploy_samples: int = Field(1000, ge=1, description="M samples for smoothed prediction")
    prob_clamp: float = Field(DEFAULT_PROB_CLAMP, gt=0.0, lt=0.5)
