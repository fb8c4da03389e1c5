"""Unit tests for the cluster Hamiltonian and the Lanczos ground-state solver."""

import numpy as np
import pytest

from certiq.exceptions import ConvergenceError, QubitCountError
from certiq.hamiltonian import build_hamiltonian, dense_ground_state, ground_state
from certiq.models.cluster import ClusterParams
from tests.helpers.assertion_helpers import assert_normalized, assert_same_state_up_to_phase
from tests.helpers.oracles import dense_cluster_hamiltonian


class TestBuildHamiltonian:
    """Test the sparse operator against a dense Pauli-string oracle."""

    @pytest.mark.parametrize("n,j1,j2", [(3, 0.4, -1.3), (4, -2.2, 0.7), (5, 1.5, 2.5)])
    def test_matches_dense_oracle(self, n, j1, j2):
        """Test every matrix element against Kronecker products."""
        h = build_hamiltonian(ClusterParams(n_qubits=n, j1=j1, j2=j2))

        assert np.allclose(h.toarray(), dense_cluster_hamiltonian(n, j1, j2))

    def test_is_symmetric(self):
        """Test that the operator is real symmetric."""
        h = build_hamiltonian(ClusterParams(n_qubits=4, j1=1.2, j2=-0.4)).toarray()

        assert np.allclose(h, h.T)

    def test_memory_guard(self):
        """Test that registers above the guard are refused."""
        with pytest.raises(QubitCountError):
            build_hamiltonian(ClusterParams(n_qubits=5, j1=0.0, j2=0.0), max_qubits=4)

    def test_two_qubit_chain_rejected(self):
        """Test that the three-site term needs three qubits."""
        with pytest.raises(QubitCountError):
            ClusterParams(n_qubits=2, j1=0.0, j2=0.0)


class TestGroundState:
    """Test the Lanczos solver."""

    def test_field_only_ground_state(self):
        """Test j1 = j2 = 0: energy -n and the all-ones basis state."""
        n = 4
        energy, state = ground_state(build_hamiltonian(ClusterParams(n_qubits=n, j1=0.0, j2=0.0)), seed=0)

        assert energy == pytest.approx(-n, abs=1e-9)
        assert abs(state.amplitudes[-1] - 1.0) < 1e-8

    @pytest.mark.parametrize("j1,j2", [(0.5, 0.3), (-0.7, 2.5), (1.2, -0.4)])
    def test_matches_dense_diagonalization(self, j1, j2):
        """Test energy and state against full diagonalization."""
        h = build_hamiltonian(ClusterParams(n_qubits=4, j1=j1, j2=j2))
        dense_energy, dense_state = dense_ground_state(h)

        energy, state = ground_state(h, seed=7)

        assert energy == pytest.approx(dense_energy, abs=1e-8)
        assert_normalized(state)
        assert_same_state_up_to_phase(state.amplitudes, dense_state.amplitudes, tol=1e-6)

    def test_residual_is_small(self):
        """Test ||H psi - E psi|| at the returned pair."""
        h = build_hamiltonian(ClusterParams(n_qubits=5, j1=-1.1, j2=0.9))
        energy, state = ground_state(h, seed=1)
        psi = state.amplitudes

        assert np.linalg.norm(h @ psi - energy * psi) < 1e-7

    def test_global_phase_is_fixed(self):
        """Test that the largest amplitude is real and positive."""
        _, state = ground_state(build_hamiltonian(ClusterParams(n_qubits=4, j1=0.9, j2=1.7)), seed=3)
        k = int(np.argmax(np.abs(state.amplitudes)))

        assert abs(state.amplitudes[k].imag) < 1e-12
        assert state.amplitudes[k].real > 0

    def test_same_seed_is_deterministic(self):
        """Test bitwise reproducibility for a fixed seed."""
        h = build_hamiltonian(ClusterParams(n_qubits=4, j1=-0.3, j2=0.8))

        assert np.array_equal(ground_state(h, seed=5)[1].amplitudes, ground_state(h, seed=5)[1].amplitudes)

    def test_iteration_budget_exhaustion(self):
        """Test that a too-small Krylov budget raises ConvergenceError."""
        h = build_hamiltonian(ClusterParams(n_qubits=4, j1=0.5, j2=0.3))

        with pytest.raises(ConvergenceError):
            ground_state(h, seed=0, max_iter=2, tol=1e-14)


def _cyclic_shift(psi: np.ndarray, n: int) -> np.ndarray:
    """Amplitudes after relabelling qubit j as qubit j + 1 (mod n)."""
    tensor = psi.reshape((2,) * n)
    return np.moveaxis(tensor, list(range(n)), [(j + 1) % n for j in range(n)]).reshape(-1)


class TestRandomCouplings:
    """Test random couplings across chain lengths against dense diagonalization."""

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    @pytest.mark.parametrize("draw", range(20))
    def test_ground_energy_matches_dense_oracle(self, n, draw):
        """Test the operator and the Lanczos ground energy within 1e-9."""
        j1, j2 = np.random.default_rng(100 * n + draw).uniform(-4.0, 4.0, size=2)
        h = build_hamiltonian(ClusterParams(n_qubits=n, j1=float(j1), j2=float(j2)))
        dense = dense_cluster_hamiltonian(n, j1, j2)

        energy, state = ground_state(h, seed=draw)

        assert np.allclose(h.toarray(), dense, rtol=0.0, atol=1e-12)
        assert energy == pytest.approx(float(np.linalg.eigvalsh(dense)[0]), abs=1e-9)
        assert_normalized(state)
        psi = state.amplitudes
        assert np.linalg.norm(dense @ psi - energy * psi) < 1e-8

    @pytest.mark.parametrize("n", [4, 5, 6])
    @pytest.mark.parametrize("j1,j2", [(0.5, 0.3), (-0.4, 0.2), (0.3, -0.6)])
    def test_ground_state_is_translation_invariant(self, n, j1, j2):
        """Test that a cyclic qubit shift maps a unique ground state to itself up to phase."""
        h = build_hamiltonian(ClusterParams(n_qubits=n, j1=j1, j2=j2))
        levels = np.linalg.eigvalsh(h.toarray())
        assert levels[1] - levels[0] > 1e-3

        _, state = ground_state(h, seed=0)

        shifted = _cyclic_shift(state.amplitudes, n)
        assert_same_state_up_to_phase(shifted, state.amplitudes, tol=1e-8)
        assert np.allclose(_cyclic_shift(dense_cluster_hamiltonian(n, j1, j2) @ state.amplitudes, n),
                           dense_cluster_hamiltonian(n, j1, j2) @ shifted)
