"""Configuration data loader for certiq.

Shipped defaults live as YAML/JSON documents under ``config/data``; user
configuration files given with ``--config`` are read the same way.
"""

import yaml
from pathlib import Path
from typing import Dict, Any, Optional, List
from functools import lru_cache
import logging

from ..constants import PHASE_BOUNDARY_FILE
from ..exceptions import ConfigurationError, MissingConfigurationError

logger = logging.getLogger(__name__)

_SUFFIXES = ('.yaml', '.yml', '.json')


def _read_document(filepath: Path) -> Dict[str, Any]:
    """Parse a YAML or JSON document (JSON is read as a YAML subset).

    Raises:
        ConfigurationError: If the file cannot be read or parsed
    """
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(
            f"Failed to parse configuration file: {filepath.name}",
            {"error": str(e), "file": str(filepath)}
        )
    except OSError as e:
        raise ConfigurationError(
            f"Failed to load configuration file: {filepath.name}",
            {"error": str(e), "file": str(filepath)}
        )
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(
            f"Configuration file must contain a mapping: {filepath.name}",
            {"file": str(filepath), "found": type(data).__name__}
        )
    return data


class ConfigLoader:
    """Loads and manages configuration data from YAML/JSON files."""

    def __init__(self, config_dir: Optional[Path] = None):
        """Initialize the configuration loader.

        Args:
            config_dir: Directory containing configuration files.
                       Defaults to config/data relative to this file.
        """
        if config_dir is None:
            config_dir = Path(__file__).parent / "data"

        self.config_dir = Path(config_dir)

        if not self.config_dir.exists():
            raise ConfigurationError(
                f"Configuration directory not found: {self.config_dir}",
                {"suggested_path": str(self.config_dir.absolute())}
            )

    @lru_cache(maxsize=32)
    def load_file(self, filename: str) -> Dict[str, Any]:
        """Load a single configuration file from the data directory.

        Args:
            filename: Name of the file to load (without extension means .yaml)

        Returns:
            Dictionary containing the loaded configuration data

        Raises:
            MissingConfigurationError: If the data directory has no such file
            ConfigurationError: If file cannot be loaded or parsed
        """
        if not filename.endswith(_SUFFIXES):
            filename = f"{filename}.yaml"

        filepath = self.config_dir / filename

        if not filepath.exists():
            raise MissingConfigurationError(filename, {
                "searched_path": str(filepath.absolute()),
                "available": self.get_all_files(),
            })

        logger.debug("Loading configuration document %s", filepath)
        return _read_document(filepath)

    def load_snes(self) -> Dict[str, Any]:
        """Load sNES training defaults.

        Returns:
            Dictionary of SnesConfig field values
        """
        return self.load_file("snes")

    def load_certification(self) -> Dict[str, Any]:
        """Load certification defaults (shot counts, alpha, modes)."""
        return self.load_file("certification")

    def load_noise_sweep(self) -> Dict[str, Any]:
        """Load the noise-injection comparison defaults."""
        return self.load_file("noise_sweep")

    def load_hp_search_space(self) -> Dict[str, Any]:
        """Load the hyperparameter search ranges.

        Returns:
            Dictionary mapping hyperparameter names to their sampling ranges
        """
        return self.load_file("hp_search_space")

    def load_phase_boundaries(self) -> Dict[str, Any]:
        """Load the shipped phase-boundary regions."""
        return self.load_file(PHASE_BOUNDARY_FILE)

    def get_all_files(self) -> List[str]:
        """Get list of all available configuration files.

        Returns:
            List of configuration file names (without paths)
        """
        return sorted(
            f.name for f in self.config_dir.iterdir() if f.suffix in _SUFFIXES
        )


def load_user_config(path: Path) -> Dict[str, Any]:
    """Load a user-supplied ``--config`` file.

    Args:
        path: Path to a YAML or JSON mapping

    Returns:
        The parsed mapping

    Raises:
        ConfigurationError: If the file is missing or malformed
    """
    path = Path(path)
    if not path.exists():
        raise MissingConfigurationError(str(path), {"searched_path": str(path.absolute())})
    return _read_document(path)


def merge_sections(*layers: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    """Overlay configuration mappings left to right, skipping None values."""
    merged: Dict[str, Any] = {}
    for layer in layers:
        if not layer:
            continue
        for key, value in layer.items():
            if value is not None:
                merged[key] = value
    return merged


# Global instance
_default_loader: Optional[ConfigLoader] = None


def get_config_loader() -> ConfigLoader:
    """Get the default configuration loader instance.

    Returns:
        The global ConfigLoader instance
    """
    global _default_loader
    if _default_loader is None:
        _default_loader = ConfigLoader()
    return _default_loader
