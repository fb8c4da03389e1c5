"""Gate unitaries in the half-angle convention.

RZ(t) = diag(e^{-it/2}, e^{it/2}); RX, RY analogous; RXX/RYY/RZZ(t) =
exp(-i (t/2) P⊗P). Certified radii are expressed in these angle units.
Two-qubit matrices index the basis as 2*bit(first qubit) + bit(second qubit);
controlled gates use the first qubit as control.
"""

import numpy as np

from .constants import GateKind
from .exceptions import ParameterIndexError
from .models.circuit import GateOp

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)

_XX = np.kron(_X, _X)
_YY = np.kron(_Y, _Y)
_ZZ = np.kron(_Z, _Z)
_CX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)

_PAULI_1Q = {GateKind.RX: _X, GateKind.RY: _Y, GateKind.RZ: _Z}
_PAULI_2Q = {GateKind.RXX: _XX, GateKind.RYY: _YY, GateKind.RZZ: _ZZ}
_CONTROLLED = {GateKind.CRX: GateKind.RX, GateKind.CRY: GateKind.RY, GateKind.CRZ: GateKind.RZ}
_FIXED = {GateKind.H: _H, GateKind.X: _X, GateKind.CX: _CX}


def _rotation(pauli: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """exp(-i (t/2) P) for a Pauli string P (P² = I), batched over angles."""
    half = 0.5 * angles
    eye = np.eye(pauli.shape[0], dtype=np.complex128)
    return (np.cos(half)[:, None, None] * eye
            - 1j * np.sin(half)[:, None, None] * pauli)


def batched_matrices(kind: GateKind, angles: np.ndarray) -> np.ndarray:
    """Unitaries of one gate kind for a batch of angles.

    Args:
        kind: Gate kind
        angles: Shape (B,) rotation angles (ignored for fixed gates)

    Returns:
        Array of shape (B, d, d) with d = 2 or 4
    """
    angles = np.asarray(angles, dtype=np.float64).reshape(-1)
    if kind in _FIXED:
        base = _FIXED[kind]
        return np.broadcast_to(base, (angles.shape[0],) + base.shape)
    if kind in _PAULI_1Q:
        return _rotation(_PAULI_1Q[kind], angles)
    if kind in _PAULI_2Q:
        return _rotation(_PAULI_2Q[kind], angles)
    target = _rotation(_PAULI_1Q[_CONTROLLED[kind]], angles)
    out = np.zeros((angles.shape[0], 4, 4), dtype=np.complex128)
    out[:, 0, 0] = 1.0
    out[:, 1, 1] = 1.0
    out[:, 2:, 2:] = target
    return out


def gate_angles(gate: GateOp, thetas: np.ndarray) -> np.ndarray:
    """Per-row angle of a gate for a (B, D) parameter batch."""
    batch = thetas.shape[0]
    if gate.is_parameterized:
        if gate.param_index >= thetas.shape[1]:
            raise ParameterIndexError(gate.param_index, thetas.shape[1])
        return thetas[:, gate.param_index]
    return np.full(batch, gate.angle if gate.angle is not None else 0.0)


def gate_matrix(gate: GateOp, params: np.ndarray) -> np.ndarray:
    """The 2x2 or 4x4 unitary of a single gate for one parameter vector."""
    thetas = np.asarray(params, dtype=np.float64).reshape(1, -1)
    return np.array(batched_matrices(gate.kind, gate_angles(gate, thetas))[0])
