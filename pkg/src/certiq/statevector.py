"""Statevector simulation of parameterized circuits.

Gates are applied by viewing the amplitude buffer as an n-axis tensor of
bit indices and contracting the gate's 2x2 / 4x4 unitary against the
addressed axes; no 2^n x 2^n operator is ever formed. Every entry point has
a batched form in which row b of the state batch evolves under row b of the
parameter batch, which is how training and Monte-Carlo certification
evaluate many noisy parameter vectors at once.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from .exceptions import DimensionMismatchError, QubitIndexError
from .gates import batched_matrices, gate_angles
from .models.circuit import ClassReadout, GateOp, ParamCircuit, Statevector

logger = logging.getLogger(__name__)


def basis_state(n_qubits: int, bits: Sequence[int]) -> Statevector:
    """Computational basis state |b_0 b_1 ... b_{n-1}> (qubit 0 most significant)."""
    if len(bits) != n_qubits:
        raise DimensionMismatchError("bits", n_qubits, len(bits))
    index = 0
    for b in bits:
        index = (index << 1) | (1 if b else 0)
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return Statevector(n_qubits=n_qubits, amplitudes=amps)


def random_state(n_qubits: int, rng: np.random.Generator) -> Statevector:
    """Haar-like random pure state from complex Gaussian amplitudes."""
    dim = 1 << n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return Statevector(n_qubits=n_qubits, amplitudes=amps / np.linalg.norm(amps))


def _check_qubits(qubits: Sequence[int], n_qubits: int) -> None:
    for q in qubits:
        if not 0 <= q < n_qubits:
            raise QubitIndexError(q, n_qubits)


def _contract(psi: np.ndarray, matrices: np.ndarray, qubits: Sequence[int],
              n_qubits: int) -> np.ndarray:
    """Apply per-row unitaries to the addressed qubit axes of a (B, 2^n) batch."""
    batch = psi.shape[0]
    k = len(qubits)
    axes = [1 + q for q in qubits]
    front = list(range(1, 1 + k))
    tensor = np.moveaxis(psi.reshape((batch,) + (2,) * n_qubits), axes, front)
    moved_shape = tensor.shape
    flat = tensor.reshape(batch, 1 << k, -1)
    out = np.matmul(matrices, flat).reshape(moved_shape)
    return np.moveaxis(out, front, axes).reshape(batch, -1)


def apply_gate_batch(states: np.ndarray, gate: GateOp, thetas: np.ndarray,
                     n_qubits: int) -> np.ndarray:
    """Apply one gate to every row of a (B, 2^n) batch with (B, D) parameters."""
    _check_qubits(gate.qubits, n_qubits)
    matrices = batched_matrices(gate.kind, gate_angles(gate, thetas))
    return _contract(states, matrices, gate.qubits, n_qubits)


def apply_gate(state: Statevector, gate: GateOp, params: np.ndarray) -> Statevector:
    """Return the gate's unitary applied to the state.

    Raises:
        QubitIndexError: If the gate addresses a qubit outside the register
        ParameterIndexError: If params lacks the gate's parameter slot
    """
    thetas = np.asarray(params, dtype=np.float64).reshape(1, -1)
    out = apply_gate_batch(state.amplitudes.reshape(1, -1), gate, thetas, state.n_qubits)
    return Statevector(n_qubits=state.n_qubits, amplitudes=out[0])


def _as_theta_batch(thetas: np.ndarray, circuit: ParamCircuit) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=np.float64)
    if thetas.ndim == 1:
        thetas = thetas.reshape(1, -1)
    if thetas.ndim != 2 or thetas.shape[1] != circuit.param_count:
        raise DimensionMismatchError("theta", circuit.param_count, thetas.shape)
    return thetas


def run_circuit_batch(states: np.ndarray, circuit: ParamCircuit,
                      thetas: np.ndarray) -> np.ndarray:
    """Evolve a batch of states, row b under parameters thetas[b].

    Args:
        states: (B, 2^n) or (2^n,) amplitudes; a single state is broadcast
        circuit: The parameterized circuit
        thetas: (B, D) parameter batch

    Returns:
        (B, 2^n) complex amplitudes
    """
    thetas = _as_theta_batch(thetas, circuit)
    dim = 1 << circuit.n_qubits
    states = np.asarray(states, dtype=np.complex128)
    if states.ndim == 1:
        states = np.broadcast_to(states, (thetas.shape[0], states.shape[0]))
    if states.shape != (thetas.shape[0], dim):
        raise DimensionMismatchError("state batch", (thetas.shape[0], dim), states.shape)
    psi = np.array(states, dtype=np.complex128, copy=True)
    for gate in circuit.gates:
        psi = apply_gate_batch(psi, gate, thetas, circuit.n_qubits)
    return psi


def run_circuit(state0: Statevector, circuit: ParamCircuit, theta: np.ndarray) -> Statevector:
    """U(theta)|state0>, gates applied in list order.

    Raises:
        DimensionMismatchError: If theta or the state does not match the circuit
    """
    if state0.n_qubits != circuit.n_qubits:
        raise DimensionMismatchError("n_qubits", circuit.n_qubits, state0.n_qubits)
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (circuit.param_count,):
        raise DimensionMismatchError("theta", circuit.param_count, theta.shape)
    out = run_circuit_batch(state0.amplitudes, circuit, theta.reshape(1, -1))
    return Statevector(n_qubits=circuit.n_qubits, amplitudes=out[0])


def _class_matrix(readout: ClassReadout) -> np.ndarray:
    matrix = np.zeros((len(readout.mapping), readout.class_count))
    matrix[np.arange(len(readout.mapping)), list(readout.mapping)] = 1.0
    return matrix


def class_probabilities_batch(states: np.ndarray, readout: ClassReadout,
                              n_qubits: int) -> np.ndarray:
    """Class probabilities for every row of a (B, 2^n) batch, shape (B, N)."""
    _check_qubits(readout.readout_qubits, n_qubits)
    states = np.asarray(states)
    if states.ndim == 1:
        states = states.reshape(1, -1)
    batch = states.shape[0]
    weights = (states.real ** 2 + states.imag ** 2).reshape((batch,) + (2,) * n_qubits)
    kept = [1 + q for q in readout.readout_qubits]
    traced = tuple(ax for ax in range(1, 1 + n_qubits) if ax not in kept)
    marginal = weights.sum(axis=traced) if traced else weights
    # remaining axes are in ascending qubit order; reorder to readout order
    remaining = sorted(readout.readout_qubits)
    order = [1 + remaining.index(q) for q in readout.readout_qubits]
    patterns = np.transpose(marginal, [0] + order).reshape(batch, -1)
    return patterns @ _class_matrix(readout)


def class_probabilities(state: Statevector, readout: ClassReadout) -> np.ndarray:
    """Summed squared amplitudes over basis states whose readout bits map to each class."""
    return class_probabilities_batch(state.amplitudes, readout, state.n_qubits)[0]


def classifier_eval_batch(circuit: ParamCircuit, readout: ClassReadout,
                          states: np.ndarray, thetas: np.ndarray,
                          chunk: Optional[int] = None) -> np.ndarray:
    """C(theta_b, x_b) for a batch, optionally simulated in chunks of rows."""
    thetas = _as_theta_batch(thetas, circuit)
    states = np.asarray(states, dtype=np.complex128)
    total = thetas.shape[0]
    if chunk is None or chunk >= total:
        evolved = run_circuit_batch(states, circuit, thetas)
        return class_probabilities_batch(evolved, readout, circuit.n_qubits)
    out = np.empty((total, readout.class_count))
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        rows = states if states.ndim == 1 else states[start:stop]
        evolved = run_circuit_batch(rows, circuit, thetas[start:stop])
        out[start:stop] = class_probabilities_batch(evolved, readout, circuit.n_qubits)
    return out


def classifier_eval(circuit: ParamCircuit, readout: ClassReadout,
                    x_state: Statevector, theta: np.ndarray) -> np.ndarray:
    """C(theta, x): class probabilities of the evolved input state."""
    return class_probabilities(run_circuit(x_state, circuit, theta), readout)


def predicted_class(probs: np.ndarray) -> int:
    """Argmax with ties going to the lowest class index."""
    return int(np.argmax(probs))
