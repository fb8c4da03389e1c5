"""
Pytest configuration and shared fixtures for certiq tests.

This module contains pytest configuration, shared fixtures, and small
classifier builders that are used across multiple test modules.
"""

import numpy as np
import pytest

from certiq.config import clear_settings_cache
from certiq.constants import GateKind
from certiq.dataset import gen_dataset
from certiq.models.circuit import ClassReadout, GateOp, ParamCircuit
from certiq.models.qcnn import QcnnSpec
from certiq.phases import load_phase_boundaries
from certiq.qcnn import build_qcnn
from certiq.statevector import basis_state


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Isolate every test from CERTIQ_* variables and the settings cache."""
    for name in ("CERTIQ_THREADS", "CERTIQ_LOG_LEVEL", "CERTIQ_OUTPUT_DIR", "CERTIQ_MAX_QUBITS",
                 "CERTIQ_SIMULATION_BATCH", "CERTIQ_LANCZOS_MAX_ITER", "CERTIQ_LANCZOS_TOL"):
        monkeypatch.delenv(name, raising=False)
    clear_settings_cache()
    yield
    clear_settings_cache()


@pytest.fixture(scope="session")
def phase_spec():
    """The shipped phase-boundary specification."""
    return load_phase_boundaries()


@pytest.fixture(scope="session")
def toy_samples(phase_spec):
    """Eight labelled 4-qubit ground states."""
    return gen_dataset(4, 8, seed=11, spec=phase_spec, threads=1)


@pytest.fixture(scope="session")
def qcnn4():
    """The 4-qubit QCNN and its readout."""
    return build_qcnn(QcnnSpec(n_qubits=4))


@pytest.fixture
def ry_classifier():
    """One-qubit RY(theta) circuit read out in the computational basis (2 classes)."""
    circuit = ParamCircuit(
        n_qubits=1,
        gates=(GateOp(kind=GateKind.RY, qubits=(0,), param_index=0),),
        param_count=1,
    )
    readout = ClassReadout.binary_patterns((0,))
    return circuit, readout, basis_state(1, [0])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
