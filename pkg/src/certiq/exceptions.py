"""Custom exceptions for certiq."""

from typing import Optional, Dict, Any


class CertiqError(Exception):
    """Base exception for all certiq errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """Initialize the error with a message and optional details.

        Args:
            message: The error message
            details: Additional error details
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert the error to a dictionary for logs and result files.

        Returns:
            Dictionary representation of the error
        """
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": self.details
        }


class ConfigurationError(CertiqError):
    """Errors related to configuration."""
    pass


class InvalidConfigurationError(ConfigurationError):
    """Raised when configuration values are invalid."""

    def __init__(self, config_key: str, value: Any, reason: str):
        super().__init__(
            f"Invalid configuration for '{config_key}': {reason}",
            {"config_key": config_key, "value": str(value), "reason": reason}
        )


class MissingConfigurationError(ConfigurationError):
    """Raised when a required configuration document is absent."""

    def __init__(self, config_key: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            f"Missing required configuration: {config_key}",
            {"config_key": config_key, **(details or {})}
        )


class CircuitError(CertiqError):
    """Errors related to circuits, gates and statevectors."""
    pass


class QubitIndexError(CircuitError):
    """Raised when a gate addresses a qubit the register does not have."""

    def __init__(self, qubit: int, n_qubits: int):
        super().__init__(
            f"Qubit index {qubit} out of range for {n_qubits} qubits",
            {"qubit": qubit, "n_qubits": n_qubits}
        )


class ParameterIndexError(CircuitError):
    """Raised when a gate references a parameter slot that does not exist."""

    def __init__(self, index: int, param_count: int):
        super().__init__(
            f"Parameter index {index} out of range for {param_count} parameters",
            {"index": index, "param_count": param_count}
        )


class DimensionMismatchError(CircuitError):
    """Raised when array shapes disagree with the circuit."""

    def __init__(self, what: str, expected: Any, found: Any):
        super().__init__(
            f"Dimension mismatch for {what}: expected {expected}, found {found}",
            {"what": what, "expected": str(expected), "found": str(found)}
        )


class HamiltonianError(CertiqError):
    """Errors related to building the cluster Hamiltonian."""
    pass


class QubitCountError(HamiltonianError):
    """Raised when a qubit count is outside the supported range."""

    def __init__(self, n_qubits: int, reason: str):
        super().__init__(
            f"Unsupported qubit count {n_qubits}: {reason}",
            {"n_qubits": n_qubits, "reason": reason}
        )


class NumericalError(CertiqError):
    """Errors raised by numerical routines."""
    pass


class ConvergenceError(NumericalError):
    """Raised when an iterative solver exhausts its budget."""

    def __init__(self, solver: str, iterations: int, residual: float):
        super().__init__(
            f"{solver} did not converge after {iterations} iterations "
            f"(residual {residual:.3e})",
            {"solver": solver, "iterations": iterations, "residual": residual}
        )


class DatasetError(CertiqError):
    """Errors related to dataset files."""
    pass


class DatasetFormatError(DatasetError):
    """Raised when a dataset file cannot be parsed."""

    def __init__(self, path: str, record_index: Optional[int], reason: str):
        where = "header" if record_index is None else f"record {record_index}"
        super().__init__(
            f"Malformed dataset {path} at {where}: {reason}",
            {"path": path, "record_index": record_index, "reason": reason}
        )


class DatasetVersionError(DatasetError):
    """Raised when a dataset was written by an incompatible format version."""

    def __init__(self, found: Any, expected: int):
        super().__init__(
            f"Dataset format version {found} is not supported (expected {expected})",
            {"found": str(found), "expected": expected}
        )


class PhaseLabelError(CertiqError):
    """Errors related to phase labelling."""
    pass


class OutsideDomainError(PhaseLabelError):
    """Raised when a coupling pair lies outside the phase diagram."""

    def __init__(self, j1: float, j2: float):
        super().__init__(
            f"Point ({j1}, {j2}) lies outside the phase diagram domain",
            {"j1": j1, "j2": j2}
        )


class CertificationError(CertiqError):
    """Errors related to probability bounds and certificates."""
    pass


class InvalidProbabilityError(CertificationError):
    """Raised when a probability lies outside the admissible interval."""

    def __init__(self, name: str, value: float, interval: str = "(0, 1)"):
        super().__init__(
            f"{name}={value} must lie in {interval}",
            {"name": name, "value": value, "interval": interval}
        )


class InvalidCountsError(CertificationError):
    """Raised when binomial counts are inconsistent."""

    def __init__(self, successes: int, trials: int):
        super().__init__(
            f"Invalid counts: {successes} successes out of {trials} trials",
            {"successes": successes, "trials": trials}
        )


class AnalysisError(CertiqError):
    """Errors raised by sweep analyses."""
    pass


class InsufficientRecordsError(AnalysisError):
    """Raised when too few records are available for an analysis."""

    def __init__(self, analysis: str, found: int, required: int):
        super().__init__(
            f"{analysis} needs at least {required} usable records, found {found}",
            {"analysis": analysis, "found": found, "required": required}
        )


class CommandError(CertiqError):
    """Errors related to command execution."""
    pass
