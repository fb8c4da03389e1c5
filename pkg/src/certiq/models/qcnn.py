"""Pydantic models for the QCNN ansatz."""

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..constants import MIN_QCNN_QUBITS, PHASE_CLASS_COUNT
from ..exceptions import InvalidConfigurationError


class QcnnSpec(BaseModel):
    """Shape of the convolution/pooling network."""

    model_config = ConfigDict(frozen=True)

    n_qubits: int = Field(description="Register size (powers of two pool evenly)")
    conv_reps: int = Field(1, description="Brickwork sublayers per convolution layer")
    readout_qubit_count: int = Field(2, description="Surviving qubits measured for 4 classes")

    @field_validator("n_qubits")
    @classmethod
    def validate_n_qubits(cls, v: int) -> int:
        if v < MIN_QCNN_QUBITS:
            raise InvalidConfigurationError(
                "n_qubits", v, f"the QCNN needs at least {MIN_QCNN_QUBITS} qubits"
            )
        return v

    @field_validator("conv_reps")
    @classmethod
    def validate_conv_reps(cls, v: int) -> int:
        if v < 1:
            raise InvalidConfigurationError("conv_reps", v, "must be at least 1")
        return v

    @field_validator("readout_qubit_count")
    @classmethod
    def validate_readout(cls, v: int) -> int:
        if v < 1 or 1 << v != PHASE_CLASS_COUNT:
            raise InvalidConfigurationError(
                "readout_qubit_count", v,
                f"the {PHASE_CLASS_COUNT} phase classes are read from exactly two qubits"
            )
        return v
