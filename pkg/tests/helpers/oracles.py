"""Dense reference implementations used to check the sparse and tensor code paths."""

from typing import Sequence

import numpy as np

from certiq.gates import gate_matrix
from certiq.models.circuit import GateOp, ParamCircuit

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def pauli_string(n: int, ops: dict) -> np.ndarray:
    """Kronecker product with qubit 0 as the leftmost (most significant) factor."""
    out = np.array([[1.0]])
    for q in range(n):
        out = np.kron(out, ops.get(q, I2))
    return out


def dense_cluster_hamiltonian(n: int, j1: float, j2: float) -> np.ndarray:
    """sum_j Z_j + j1 X_j X_{j+1} - j2 X_{j-1} Z_j X_{j+1}, periodic."""
    h = np.zeros((1 << n, 1 << n))
    for j in range(n):
        h += pauli_string(n, {j: Z})
        h += j1 * pauli_string(n, {j: X, (j + 1) % n: X})
        h -= j2 * pauli_string(n, {(j - 1) % n: X, j: Z, (j + 1) % n: X})
    return h


def dense_gate(gate: GateOp, params: np.ndarray, n: int) -> np.ndarray:
    """Full 2^n x 2^n operator of a gate, built column by column."""
    local = gate_matrix(gate, params)
    dim = 1 << n
    full = np.zeros((dim, dim), dtype=np.complex128)
    qubits: Sequence[int] = gate.qubits
    shifts = [n - 1 - q for q in qubits]
    for col in range(dim):
        sub = 0
        for s in shifts:
            sub = (sub << 1) | ((col >> s) & 1)
        cleared = col
        for s in shifts:
            cleared &= ~(1 << s)
        for row_sub in range(local.shape[0]):
            row = cleared
            for k, s in enumerate(shifts):
                bit = (row_sub >> (len(shifts) - 1 - k)) & 1
                row |= bit << s
            full[row, col] += local[row_sub, sub]
    return full


def dense_circuit(circuit: ParamCircuit, theta: np.ndarray) -> np.ndarray:
    """U(theta) = U_L ... U_1 as a dense matrix."""
    u = np.eye(1 << circuit.n_qubits, dtype=np.complex128)
    for gate in circuit.gates:
        u = dense_gate(gate, theta, circuit.n_qubits) @ u
    return u


# RY(theta)|0> is read as class 0 exactly while |theta| < pi/2
RY_THRESHOLD = np.pi / 2
