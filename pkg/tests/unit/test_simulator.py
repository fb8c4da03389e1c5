"""Unit tests for gate unitaries and the tensor-contraction statevector simulator."""

import numpy as np
import pytest

from certiq.constants import ONE_QUBIT_GATES, PARAMETRIC_GATES, GateKind
from certiq.exceptions import CircuitError, DimensionMismatchError, ParameterIndexError, QubitIndexError
from certiq.gates import batched_matrices, gate_matrix
from certiq.models.circuit import ClassReadout, GateOp, ParamCircuit, Statevector
from certiq.statevector import (
    apply_gate, basis_state, class_probabilities, classifier_eval, classifier_eval_batch,
    predicted_class, random_state, run_circuit, run_circuit_batch
)
from tests.helpers.assertion_helpers import assert_normalized, assert_probability_vector
from tests.helpers.oracles import dense_circuit, dense_gate


def _mixed_circuit() -> ParamCircuit:
    """Every gate family on 3 qubits, including reversed and non-adjacent pairs."""
    gates = [
        GateOp(kind=GateKind.H, qubits=(0,)),
        GateOp(kind=GateKind.RX, qubits=(1,), param_index=0),
        GateOp(kind=GateKind.RY, qubits=(2,), param_index=1),
        GateOp(kind=GateKind.RZ, qubits=(0,), param_index=2),
        GateOp(kind=GateKind.RXX, qubits=(2, 0), param_index=3),
        GateOp(kind=GateKind.RYY, qubits=(0, 1), param_index=4),
        GateOp(kind=GateKind.RZZ, qubits=(1, 2), param_index=5),
        GateOp(kind=GateKind.CX, qubits=(2, 1)),
        GateOp(kind=GateKind.CRX, qubits=(0, 2), param_index=6),
        GateOp(kind=GateKind.CRY, qubits=(2, 0), param_index=7),
        GateOp(kind=GateKind.CRZ, qubits=(1, 0), param_index=8),
        GateOp(kind=GateKind.X, qubits=(1,)),
        GateOp(kind=GateKind.RZ, qubits=(2,), angle=0.3),
    ]
    return ParamCircuit(n_qubits=3, gates=tuple(gates), param_count=9)


class TestGates:
    """Test gate matrices in the half-angle convention."""

    def test_rz_is_half_angle_diagonal(self):
        """Test RZ(t) = diag(e^{-it/2}, e^{it/2})."""
        gate = GateOp(kind=GateKind.RZ, qubits=(0,), param_index=0)
        t = 0.7

        assert np.allclose(gate_matrix(gate, np.array([t])),
                           np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)]))

    def test_rotation_by_two_pi_is_minus_identity(self):
        """Test that the half-angle convention gives R(2 pi) = -I."""
        for kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
            m = batched_matrices(kind, np.array([2 * np.pi]))[0]
            assert np.allclose(m, -np.eye(2))

    def test_controlled_gate_acts_on_second_qubit(self):
        """Test that CRX leaves the control-0 block untouched."""
        m = batched_matrices(GateKind.CRX, np.array([1.1]))[0]

        assert np.allclose(m[:2, :2], np.eye(2))
        assert np.allclose(m[2:, 2:], batched_matrices(GateKind.RX, np.array([1.1]))[0])

    def test_all_gates_are_unitary(self, rng):
        """Test unitarity for random angles."""
        for kind in GateKind:
            for m in batched_matrices(kind, rng.uniform(-np.pi, np.pi, 4)):
                assert np.allclose(m.conj().T @ m, np.eye(m.shape[0]))

    def test_missing_parameter_slot_raises(self):
        """Test that a too-short parameter vector is rejected."""
        gate = GateOp(kind=GateKind.RX, qubits=(0,), param_index=3)
        with pytest.raises(ParameterIndexError):
            gate_matrix(gate, np.zeros(2))


class TestCircuitModels:
    """Test validation of gates, circuits and readouts."""

    def test_fixed_gate_rejects_angle(self):
        """Test that non-parametric gates take no angle."""
        with pytest.raises(CircuitError):
            GateOp(kind=GateKind.CX, qubits=(0, 1), angle=0.2)

    def test_parametric_gate_needs_exactly_one_source(self):
        """Test that rotations need an angle or a parameter slot, not both."""
        with pytest.raises(CircuitError):
            GateOp(kind=GateKind.RX, qubits=(0,))
        with pytest.raises(CircuitError):
            GateOp(kind=GateKind.RX, qubits=(0,), angle=0.1, param_index=0)

    def test_arity_and_distinct_qubits(self):
        """Test gate arity and distinct targets."""
        with pytest.raises(CircuitError):
            GateOp(kind=GateKind.RXX, qubits=(0,), param_index=0)
        with pytest.raises(CircuitError):
            GateOp(kind=GateKind.RZZ, qubits=(1, 1), param_index=0)

    def test_circuit_rejects_out_of_range_qubit(self):
        """Test that gates must fit the register."""
        with pytest.raises(QubitIndexError):
            ParamCircuit(n_qubits=2, gates=(GateOp(kind=GateKind.H, qubits=(2,)),), param_count=0)

    def test_circuit_rejects_out_of_range_parameter(self):
        """Test that parameter slots must fit theta."""
        with pytest.raises(ParameterIndexError):
            ParamCircuit(
                n_qubits=1,
                gates=(GateOp(kind=GateKind.RX, qubits=(0,), param_index=1),),
                param_count=1,
            )

    def test_readout_mapping_length(self):
        """Test that every readout pattern needs a class."""
        with pytest.raises(DimensionMismatchError):
            ClassReadout(readout_qubits=(0, 1), class_count=4, mapping=(0, 1, 2))

    def test_statevector_length(self):
        """Test that amplitudes must have length 2^n."""
        with pytest.raises(DimensionMismatchError):
            Statevector(n_qubits=2, amplitudes=np.ones(3))


class TestSimulator:
    """Test the simulator against dense Kronecker oracles."""

    def test_basis_state_ordering(self):
        """Test that qubit 0 is the most significant bit."""
        state = basis_state(3, [1, 0, 0])

        assert state.amplitudes[4] == 1.0

    def test_single_gate_matches_dense_oracle(self, rng):
        """Test each gate of the mixed circuit against its dense operator."""
        circuit = _mixed_circuit()
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        state = random_state(3, rng)
        for gate in circuit.gates:
            expected = dense_gate(gate, theta, 3) @ state.amplitudes
            assert np.allclose(apply_gate(state, gate, theta).amplitudes, expected)

    def test_circuit_matches_dense_oracle(self, rng):
        """Test a full circuit against the dense product of its gates."""
        circuit = _mixed_circuit()
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        state = random_state(3, rng)

        out = run_circuit(state, circuit, theta)

        assert np.allclose(out.amplitudes, dense_circuit(circuit, theta) @ state.amplitudes)
        assert_normalized(out)

    def test_batch_rows_evolve_independently(self, rng):
        """Test that row b of a batch sees parameters b only."""
        circuit = _mixed_circuit()
        thetas = rng.uniform(-np.pi, np.pi, (5, circuit.param_count))
        states = np.stack([random_state(3, rng).amplitudes for _ in range(5)])

        batch = run_circuit_batch(states, circuit, thetas)

        for b in range(5):
            single = run_circuit(Statevector(n_qubits=3, amplitudes=states[b]), circuit, thetas[b])
            assert np.allclose(batch[b], single.amplitudes)

    def test_theta_length_mismatch_raises(self):
        """Test that theta must have D entries."""
        with pytest.raises(DimensionMismatchError):
            run_circuit(basis_state(3, [0, 0, 0]), _mixed_circuit(), np.zeros(4))

    def test_state_width_mismatch_raises(self):
        """Test that the input state must match the register."""
        with pytest.raises(DimensionMismatchError):
            run_circuit(basis_state(2, [0, 0]), _mixed_circuit(), np.zeros(9))


class TestReadout:
    """Test class probabilities from readout patterns."""

    def test_readout_order_follows_readout_qubits(self):
        """Test that the first readout qubit is the most significant pattern bit."""
        readout = ClassReadout.binary_patterns((2, 0))
        probs = class_probabilities(basis_state(3, [1, 0, 0]), readout)

        assert np.allclose(probs, [0.0, 1.0, 0.0, 0.0])

    def test_probabilities_sum_to_one(self, rng):
        """Test that class probabilities are a distribution."""
        readout = ClassReadout(readout_qubits=(1,), class_count=2, mapping=(1, 0))
        assert_probability_vector(class_probabilities(random_state(3, rng), readout))

    def test_chunked_evaluation_matches_single_calls(self, rng):
        """Test that chunking the batch does not change results."""
        circuit = _mixed_circuit()
        readout = ClassReadout.binary_patterns((0, 2))
        state = random_state(3, rng)
        thetas = rng.uniform(-np.pi, np.pi, (7, circuit.param_count))

        batched = classifier_eval_batch(circuit, readout, state.amplitudes, thetas, chunk=3)

        for b in range(7):
            assert np.allclose(batched[b], classifier_eval(circuit, readout, state, thetas[b]))
        assert_probability_vector(batched)

    def test_predicted_class_ties_go_low(self):
        """Test argmax tie-breaking towards the lowest index."""
        assert predicted_class(np.array([0.25, 0.25, 0.5, 0.0])) == 2
        assert predicted_class(np.array([0.5, 0.5])) == 0


def _random_circuit(rng: np.random.Generator, n: int, length: int = 12) -> ParamCircuit:
    """Random gates of every family that fits n qubits, mixing parameter slots and fixed angles."""
    kinds = [k for k in GateKind if n >= 2 or k in ONE_QUBIT_GATES]
    gates = []
    slots = 0
    for _ in range(length):
        kind = kinds[int(rng.integers(len(kinds)))]
        arity = 1 if kind in ONE_QUBIT_GATES else 2
        qubits = tuple(int(q) for q in rng.permutation(n)[:arity])
        if kind not in PARAMETRIC_GATES:
            gates.append(GateOp(kind=kind, qubits=qubits))
        elif rng.random() < 0.8:
            gates.append(GateOp(kind=kind, qubits=qubits, param_index=slots))
            slots += 1
        else:
            gates.append(GateOp(kind=kind, qubits=qubits, angle=float(rng.uniform(-np.pi, np.pi))))
    return ParamCircuit(n_qubits=n, gates=tuple(gates), param_count=slots)


class TestRandomCircuits:
    """Test random circuits on up to three qubits against the dense product of their gates."""

    @pytest.mark.parametrize("seed", range(200))
    def test_matches_dense_oracle(self, seed):
        """Test run_circuit against the Kronecker oracle within 1e-10."""
        rng = np.random.default_rng(seed)
        n = 1 + seed % 3
        circuit = _random_circuit(rng, n)
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        state = random_state(n, rng)

        out = run_circuit(state, circuit, theta)

        expected = dense_circuit(circuit, theta) @ state.amplitudes
        assert np.allclose(out.amplitudes, expected, rtol=0.0, atol=1e-10)

    @pytest.mark.parametrize("seed", range(20))
    def test_inner_products_are_preserved(self, seed):
        """Test that a circuit acts unitarily: <U a|U b> = <a|b>."""
        rng = np.random.default_rng(1000 + seed)
        n = 2 + seed % 3
        circuit = _random_circuit(rng, n, length=20)
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        a, b = random_state(n, rng), random_state(n, rng)

        overlap = run_circuit(a, circuit, theta).inner(run_circuit(b, circuit, theta))

        assert abs(overlap - a.inner(b)) < 1e-10
        assert_normalized(run_circuit(a, circuit, theta))
