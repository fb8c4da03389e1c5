"""Pydantic models for the cluster phase-classification data."""

from typing import Dict, List, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..constants import MIN_CLUSTER_QUBITS
from ..exceptions import QubitCountError
from .circuit import Statevector


class ClusterParams(BaseModel):
    """Couplings of H = sum_j (Z_j + j1 X_j X_{j+1} - j2 X_{j-1} Z_j X_{j+1})."""

    model_config = ConfigDict(frozen=True)

    n_qubits: int
    j1: float
    j2: float

    @field_validator("n_qubits")
    @classmethod
    def validate_n_qubits(cls, v: int) -> int:
        if v < MIN_CLUSTER_QUBITS:
            raise QubitCountError(v, f"the three-site term needs at least {MIN_CLUSTER_QUBITS} qubits")
        return v


class Sample(BaseModel):
    """A labelled ground state."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ClusterParams
    label: int = Field(ge=0)
    state: Statevector
    energy: float


class PhaseRegion(BaseModel):
    """One labelled polygon of the phase diagram."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    class_index: int = Field(alias="class", ge=0)
    name: str = ""
    polygon: Tuple[Tuple[float, float], ...]

    @field_validator("polygon")
    @classmethod
    def validate_polygon(cls, v):
        if len(v) < 3:
            raise ValueError("a region polygon needs at least three vertices")
        return v


class PhaseBoundarySpec(BaseModel):
    """Versioned set of regions partitioning the (j1, j2) domain."""

    model_config = ConfigDict(frozen=True)

    version: int
    domain: Dict[str, Tuple[float, float]]
    regions: List[PhaseRegion]
    classes: Dict[str, str] = Field(default_factory=dict)
    description: Optional[str] = None
    spec_hash: str = ""

    @property
    def class_indices(self) -> List[int]:
        return sorted({r.class_index for r in self.regions})


class DatasetHeader(BaseModel):
    """First line of a dataset file."""

    version: int
    n_qubits: int
    spec_hash: str
    seed: int
    count: int = Field(ge=0)


class SampleRecord(BaseModel):
    """One serialized sample; amplitudes are [re, im] pairs."""

    j1: float
    j2: float
    label: int = Field(ge=0)
    energy: float
    amplitudes: List[Tuple[float, float]]
