"""Constants used throughout certiq."""

from enum import Enum
from typing import Final


# Numerical tolerances
NORM_TOLERANCE: Final[float] = 1e-9
DEGENERACY_GAP: Final[float] = 1e-10
DEFAULT_PROB_CLAMP: Final[float] = 1e-6
DEFAULT_SIGMA_FLOOR: Final[float] = 1e-8
PLAIN_MODEL_SIGMA: Final[float] = 1e-6

# Abstention marker returned in place of a class index
ABSTAIN: Final[int] = -1

# Cluster model
MIN_CLUSTER_QUBITS: Final[int] = 3
MIN_QCNN_QUBITS: Final[int] = 4
COUPLING_RANGE: Final[tuple[float, float]] = (-4.0, 4.0)
PHASE_CLASS_COUNT: Final[int] = 4
DEFAULT_TRAIN_SIZE: Final[int] = 50
DEFAULT_TEST_SIZE: Final[int] = 50

# File formats
DATASET_FORMAT_VERSION: Final[int] = 1
MODEL_FORMAT_VERSION: Final[int] = 1
PHASE_BOUNDARY_FILE: Final[str] = "phase_boundaries.json"
TRAIN_FILE_NAME: Final[str] = "train.jsonl"
TEST_FILE_NAME: Final[str] = "test.jsonl"
MODEL_FILE_NAME: Final[str] = "model.json"
PLAIN_MODEL_FILE_NAME: Final[str] = "model_plain.json"
CIRCUIT_FILE_NAME: Final[str] = "circuit.json"
PLAIN_CIRCUIT_FILE_NAME: Final[str] = "circuit_plain.json"
HISTORY_FILE_NAME: Final[str] = "history.csv"
PLAIN_HISTORY_FILE_NAME: Final[str] = "history_plain.csv"
CERTIFICATES_FILE_NAME: Final[str] = "certificates.jsonl"
METRICS_JSON_NAME: Final[str] = "metrics.json"
METRICS_CSV_NAME: Final[str] = "metrics.csv"
NOISE_SWEEP_FILE_NAME: Final[str] = "noise_sweep.csv"
NOISE_SWEEP_JSON_NAME: Final[str] = "noise_sweep.json"
JOURNAL_FILE_NAME: Final[str] = "journal.jsonl"
SWEEP_CSV_NAME: Final[str] = "sweep.csv"
FRONTIER_CSV_NAME: Final[str] = "frontier.csv"
FRONTIER_JSON_NAME: Final[str] = "frontier.json"
CORRELATION_CSV_NAME: Final[str] = "correlation.csv"
CORRELATION_JSON_NAME: Final[str] = "correlation.json"

# Exit codes
EXIT_OK: Final[int] = 0
EXIT_USAGE: Final[int] = 2
EXIT_NUMERICAL: Final[int] = 3


class GateKind(str, Enum):
    """Gate families understood by the simulator."""
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    RXX = "RXX"
    RYY = "RYY"
    RZZ = "RZZ"
    CX = "CX"
    CRX = "CRX"
    CRY = "CRY"
    CRZ = "CRZ"
    H = "H"
    X = "X"


ONE_QUBIT_GATES: Final[frozenset[GateKind]] = frozenset(
    {GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.H, GateKind.X}
)
PARAMETRIC_GATES: Final[frozenset[GateKind]] = frozenset({
    GateKind.RX, GateKind.RY, GateKind.RZ,
    GateKind.RXX, GateKind.RYY, GateKind.RZZ,
    GateKind.CRX, GateKind.CRY, GateKind.CRZ,
})


class RegularizerKind(str, Enum):
    """Variance regularizers added after each sNES step."""
    L2 = "L2"
    AREA = "AREA"


class PredictMode(str, Enum):
    """How the smoothed classifier turns noisy evaluations into a class."""
    COUNT_ARGMAX = "count-argmax"
    MEAN_PROB = "mean-prob"


class PBoundMode(str, Enum):
    """How the runner-up probability bound is formed during certification."""
    COMPLEMENT = "complement"
    BONFERRONI = "bonferroni"


class RobustnessMetric(str, Enum):
    """Robustness metrics usable on the frontier and correlation analyses."""
    CAGM = "cagm"
    SEMI_AXIS_AVG = "semi_axis_avg"


class RunStatus(str, Enum):
    """Lifecycle of a sweep run."""
    COMPLETED = "completed"
    FAILED = "failed"
