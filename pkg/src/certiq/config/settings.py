"""Process-level settings for certiq.

Values come from environment variables (prefixed ``CERTIQ_``) and optional
``.env`` files, with defaults suited to desk-scale runs.
"""

from functools import lru_cache
from pathlib import Path
from typing import Any
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..exceptions import InvalidConfigurationError


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    For example, CERTIQ_THREADS overrides ``threads``.
    """

    threads: int = Field(
        default=1,
        description="Worker count for dataset generation and sweeps",
        alias="CERTIQ_THREADS"
    )

    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
        alias="CERTIQ_LOG_LEVEL"
    )

    max_qubits: int = Field(
        default=14,
        description="Largest register the Hamiltonian builder accepts",
        alias="CERTIQ_MAX_QUBITS"
    )

    output_dir: Path = Field(
        default=Path("./runs"),
        description="Default directory for command outputs",
        alias="CERTIQ_OUTPUT_DIR"
    )

    lanczos_max_iter: int = Field(
        default=300,
        description="Krylov dimension budget for the ground-state solver",
        alias="CERTIQ_LANCZOS_MAX_ITER"
    )

    lanczos_tol: float = Field(
        default=1e-10,
        description="Residual norm at which a Ritz pair is accepted",
        alias="CERTIQ_LANCZOS_TOL"
    )

    simulation_batch: int = Field(
        default=4096,
        description="Maximum number of circuits simulated in one vectorized call",
        alias="CERTIQ_SIMULATION_BATCH"
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level is one of the allowed values.

        Args:
            v: The log level string

        Returns:
            The validated log level in uppercase

        Raises:
            InvalidConfigurationError: If log level is invalid
        """
        allowed_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        normalized = v.upper()
        if normalized not in allowed_levels:
            raise InvalidConfigurationError(
                "log_level",
                v,
                f"Must be one of {allowed_levels}"
            )
        return normalized

    @field_validator("output_dir", mode="before")
    @classmethod
    def validate_output_dir(cls, v: Any) -> Path:
        """Convert strings to Path objects."""
        if isinstance(v, str):
            return Path(v)
        return v

    @field_validator("threads", "lanczos_max_iter", "simulation_batch")
    @classmethod
    def validate_positive(cls, v: int, info) -> int:
        """Validate counts are at least one.

        Raises:
            InvalidConfigurationError: If the value is not positive
        """
        if v < 1:
            raise InvalidConfigurationError(info.field_name, v, "Must be at least 1")
        return v

    @field_validator("max_qubits")
    @classmethod
    def validate_max_qubits(cls, v: int) -> int:
        """Validate the memory guard leaves room for the smallest cluster chain.

        Raises:
            InvalidConfigurationError: If the guard is below three qubits
        """
        if v < 3:
            raise InvalidConfigurationError("max_qubits", v, "Must be at least 3")
        return v

    @field_validator("lanczos_tol")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        """Validate the solver tolerance is positive.

        Raises:
            InvalidConfigurationError: If the tolerance is not positive
        """
        if v <= 0:
            raise InvalidConfigurationError("lanczos_tol", v, "Tolerance must be positive")
        return v

    model_config = SettingsConfigDict(
        env_file=[".env"],
        env_file_encoding="utf-8",
        case_sensitive=False,
        env_prefix="",
        extra="ignore",
        populate_by_name=True,  # Allow using field names for initialization
    )


@lru_cache()
def get_settings() -> Settings:
    """Get application settings (cached).

    Returns:
        The application settings instance
    """
    return Settings()


def clear_settings_cache() -> None:
    """Clear the settings cache.

    This should only be used in tests or when settings need to be reloaded.
    """
    get_settings.cache_clear()
