"""Pydantic models for sNES training configuration, history and model files."""

import csv
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..constants import DEFAULT_PROB_CLAMP, DEFAULT_SIGMA_FLOOR, MODEL_FORMAT_VERSION, RegularizerKind
from ..exceptions import InvalidConfigurationError
from .qcnn import QcnnSpec


class SnesConfig(BaseModel):
    """Hyperparameters of the separable NES training loop."""

    model_config = ConfigDict(frozen=True)

    population: int = Field(24, description="lambda, candidates per iteration")
    eta_theta: float = Field(0.1, description="Learning rate of the mean")
    eta_sigma: float = Field(0.01, description="Learning rate of the log standard deviations")
    eta_r: float = Field(1e-4, description="Regularization strength (may be zero or negative)")
    sigma0: float = Field(0.1, description="Initial sigma for every parameter")
    reg_kind: RegularizerKind = RegularizerKind.L2
    iterations: int = Field(1500, ge=0)
    batch_size: int = Field(50, ge=1)
    prob_clamp: float = Field(DEFAULT_PROB_CLAMP)
    sigma_floor: float = Field(DEFAULT_SIGMA_FLOOR)
    init_range: float = Field(math.pi, description="theta starts uniform in [-init_range, init_range)")
    history_every: int = Field(1, ge=1)
    frozen_mask: Optional[Tuple[bool, ...]] = Field(
        None, description="True marks a parameter whose mean is not optimized"
    )
    seed: int = Field(0, ge=0)

    @field_validator("population")
    @classmethod
    def validate_population(cls, v: int) -> int:
        if v < 2:
            raise InvalidConfigurationError("population", v, "sNES needs at least 2 candidates")
        return v

    @field_validator("eta_theta", "eta_sigma", "sigma0", "sigma_floor", "init_range")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        if not v > 0:
            raise InvalidConfigurationError(info.field_name, v, "must be positive")
        return v

    @field_validator("prob_clamp")
    @classmethod
    def validate_clamp(cls, v: float) -> float:
        if not 0.0 < v < 0.5:
            raise InvalidConfigurationError("prob_clamp", v, "must lie in (0, 0.5)")
        return v


class IterationRecord(BaseModel):
    """One history row."""

    iteration: int
    mean_fitness: float
    mean_sigma: float
    acc: float


class TrainHistory(BaseModel):
    """Per-iteration training statistics."""

    records: List[IterationRecord] = Field(default_factory=list)

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    def to_csv(self, path: Path) -> None:
        """Write iter,mean_fitness,mean_sigma,acc rows."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["iter", "mean_fitness", "mean_sigma", "acc"])
            for r in self.records:
                writer.writerow([r.iteration, repr(r.mean_fitness), repr(r.mean_sigma), repr(r.acc)])


class ModelFile(BaseModel):
    """A trained model on disk: parameters plus everything needed to rebuild the classifier."""

    version: int = MODEL_FORMAT_VERSION
    theta: List[float]
    sigma: List[float]
    circuit_hash: str
    qcnn: QcnnSpec
    config: SnesConfig
    seed: int
    plain: bool = Field(False, description="Baseline trained without variance regularization")
    metadata: Dict[str, Any] = Field(default_factory=dict)
