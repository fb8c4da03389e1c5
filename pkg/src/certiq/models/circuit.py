"""Pydantic models for statevectors, gates, circuits and class readouts."""

from typing import Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..constants import GateKind, ONE_QUBIT_GATES, PARAMETRIC_GATES
from ..exceptions import (
    CircuitError, DimensionMismatchError, ParameterIndexError, QubitIndexError
)


class Statevector(BaseModel):
    """Pure n-qubit state. Qubit 0 is the most significant bit of the basis index."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n_qubits: int = Field(ge=1, description="Register size")
    amplitudes: np.ndarray = Field(description="Complex amplitudes, length 2**n_qubits")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def coerce_amplitudes(cls, v):
        arr = np.array(v, dtype=np.complex128).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def check_length(self) -> "Statevector":
        expected = 1 << self.n_qubits
        if self.amplitudes.shape[0] != expected:
            raise DimensionMismatchError("amplitudes", expected, self.amplitudes.shape[0])
        return self

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other: "Statevector") -> complex:
        """Inner product <self|other>."""
        if other.n_qubits != self.n_qubits:
            raise DimensionMismatchError("n_qubits", self.n_qubits, other.n_qubits)
        return complex(np.vdot(self.amplitudes, other.amplitudes))


class GateOp(BaseModel):
    """A gate acting on one or two qubits with a fixed angle or a parameter slot."""

    model_config = ConfigDict(frozen=True)

    kind: GateKind
    qubits: Tuple[int, ...] = Field(description="Target qubits; controls come first")
    angle: Optional[float] = Field(None, description="Fixed rotation angle in radians")
    param_index: Optional[int] = Field(None, ge=0, description="Index into theta")

    @model_validator(mode="after")
    def check_shape(self) -> "GateOp":
        arity = 1 if self.kind in ONE_QUBIT_GATES else 2
        if len(self.qubits) != arity:
            raise CircuitError(
                f"{self.kind.value} acts on {arity} qubit(s), got {len(self.qubits)}",
                {"kind": self.kind.value, "qubits": list(self.qubits)}
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(
                "Gate qubits must be distinct",
                {"kind": self.kind.value, "qubits": list(self.qubits)}
            )
        if any(q < 0 for q in self.qubits):
            raise QubitIndexError(min(self.qubits), -1)
        if self.kind in PARAMETRIC_GATES:
            if (self.angle is None) == (self.param_index is None):
                raise CircuitError(
                    f"{self.kind.value} needs exactly one of angle or param_index",
                    {"kind": self.kind.value}
                )
        elif self.angle is not None or self.param_index is not None:
            raise CircuitError(
                f"{self.kind.value} takes no angle",
                {"kind": self.kind.value}
            )
        return self

    @property
    def is_parameterized(self) -> bool:
        return self.param_index is not None


class ParamCircuit(BaseModel):
    """Ordered gate list U(theta) = U_L ... U_1 over D parameter slots."""

    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(ge=1)
    gates: Tuple[GateOp, ...] = ()
    param_count: int = Field(ge=0, description="D, the length of theta")

    @model_validator(mode="after")
    def check_indices(self) -> "ParamCircuit":
        for gate in self.gates:
            for q in gate.qubits:
                if q >= self.n_qubits:
                    raise QubitIndexError(q, self.n_qubits)
            if gate.is_parameterized and gate.param_index >= self.param_count:
                raise ParameterIndexError(gate.param_index, self.param_count)
        return self

    def referenced_parameters(self) -> list[int]:
        """Sorted distinct parameter indices used by the gates."""
        return sorted({g.param_index for g in self.gates if g.is_parameterized})


class ClassReadout(BaseModel):
    """Computational-basis projectors on readout qubits grouped into classes.

    ``mapping[p]`` is the class of readout pattern ``p``, where the first
    readout qubit is the most significant bit of ``p``.
    """

    model_config = ConfigDict(frozen=True)

    readout_qubits: Tuple[int, ...]
    class_count: int = Field(ge=1)
    mapping: Tuple[int, ...]

    @model_validator(mode="after")
    def check_mapping(self) -> "ClassReadout":
        if len(set(self.readout_qubits)) != len(self.readout_qubits):
            raise CircuitError(
                "Readout qubits must be distinct",
                {"readout_qubits": list(self.readout_qubits)}
            )
        patterns = 1 << len(self.readout_qubits)
        if len(self.mapping) != patterns:
            raise DimensionMismatchError("readout mapping", patterns, len(self.mapping))
        bad = [c for c in self.mapping if not 0 <= c < self.class_count]
        if bad:
            raise CircuitError(
                f"Readout mapping refers to classes outside [0, {self.class_count})",
                {"classes": bad}
            )
        return self

    @classmethod
    def binary_patterns(cls, readout_qubits: Tuple[int, ...]) -> "ClassReadout":
        """Readout where pattern bits b_{k-1}..b_0 are class 2^{k-1} b_{k-1} + ... + b_0."""
        count = 1 << len(readout_qubits)
        return cls(
            readout_qubits=tuple(readout_qubits),
            class_count=count,
            mapping=tuple(range(count)),
        )
