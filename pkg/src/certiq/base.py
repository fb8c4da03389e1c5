"""Base classes for certiq command-line commands."""

import argparse
import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, ClassVar, Dict, Generic, List, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .config import get_config_loader, merge_sections
from .exceptions import CommandError, InvalidConfigurationError
from .models.certification import CertificationSettings
from .models.qcnn import QcnnSpec
from .models.sweep import NoiseSweepSettings
from .models.training import SnesConfig

logger = logging.getLogger(__name__)

# Type variable for command results
TResult = TypeVar('TResult', bound=BaseModel)

CONFIG_SECTIONS = ("training", "certification", "noise_sweep", "qcnn")


def _validated(model: Type[BaseModel], data: Dict[str, Any], section: str) -> Any:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        error = e.errors()[0]
        key = ".".join(str(p) for p in error["loc"]) or section
        raise InvalidConfigurationError(f"{section}.{key}", error.get("input"), error["msg"])


class CommandContext(BaseModel):
    """Global flags shared by every command, plus the user config file."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(0, ge=0)
    out_dir: Path
    threads: int = Field(1, ge=1)
    user_config: Dict[str, Any] = Field(default_factory=dict)

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def section(self, name: str) -> Dict[str, Any]:
        """A section of the --config file (empty when absent)."""
        value = self.user_config.get(name) or {}
        if not isinstance(value, dict):
            raise InvalidConfigurationError(name, value, "config sections must be mappings")
        return value

    def snes_config(self, overrides: Optional[Dict[str, Any]] = None) -> SnesConfig:
        """Shipped defaults < config file < flags; the seed defaults to --seed."""
        data = merge_sections(
            get_config_loader().load_snes(), {"seed": self.seed},
            self.section("training"), overrides,
        )
        return _validated(SnesConfig, data, "training")

    def certification_settings(self, overrides: Optional[Dict[str, Any]] = None) -> CertificationSettings:
        data = merge_sections(
            get_config_loader().load_certification(), self.section("certification"), overrides,
        )
        return _validated(CertificationSettings, data, "certification")

    def noise_sweep_settings(self, overrides: Optional[Dict[str, Any]] = None) -> NoiseSweepSettings:
        data = merge_sections(
            get_config_loader().load_noise_sweep(), self.section("noise_sweep"), overrides,
        )
        return _validated(NoiseSweepSettings, data, "noise_sweep")

    def qcnn_spec(self, n_qubits: int, overrides: Optional[Dict[str, Any]] = None) -> QcnnSpec:
        data = merge_sections({"n_qubits": n_qubits}, self.section("qcnn"), overrides)
        data["n_qubits"] = n_qubits
        return _validated(QcnnSpec, data, "qcnn")


class BaseCommand(ABC, Generic[TResult]):
    """Base class for all certiq subcommands."""

    input_model: ClassVar[Type[BaseModel]]

    @abstractmethod
    def get_command_name(self) -> str:
        """Get the subcommand name as typed on the command line.

        Returns:
            The command name (e.g., "gen-data", "certify")
        """
        pass

    @abstractmethod
    def get_command_description(self) -> str:
        """Get the description shown in --help."""
        pass

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Declare the command's own flags; dests must match input_model fields."""
        pass

    @abstractmethod
    def execute(self, context: CommandContext, **kwargs: Any) -> TResult:
        """Execute the command.

        Args:
            context: Global flags and the user config
            **kwargs: Command-specific parameters (input_model fields)

        Returns:
            The command's result as a Pydantic model
        """
        pass

    def summarize(self, result: TResult) -> str:
        """One-line summary printed after a successful run."""
        return f"{self.get_command_name()}: done"

    def parse_input(self, kwargs: Dict[str, Any]) -> Any:
        """Validate raw keyword arguments against the command's input model.

        Raises:
            InvalidConfigurationError: If a value is rejected
        """
        return _validated(self.input_model, kwargs, self.get_command_name())

    def run(self, context: CommandContext, args: argparse.Namespace) -> TResult:
        kwargs = {
            name: getattr(args, name)
            for name in self.input_model.model_fields
            if hasattr(args, name)
        }
        return self.execute(context, **kwargs)

    def setup(self, subparsers: Any, parents: List[argparse.ArgumentParser]) -> argparse.ArgumentParser:
        """Register this command as an argparse subcommand.

        Args:
            subparsers: The object returned by add_subparsers()
            parents: Parsers contributing the global flags

        Returns:
            The subcommand's parser
        """
        parser = subparsers.add_parser(
            self.get_command_name(),
            help=self.get_command_description(),
            description=self.get_command_description(),
            parents=parents,
        )
        self.add_arguments(parser)
        return parser


class CommandRegistry:
    """Registry for managing all available commands."""

    def __init__(self):
        """Initialize the command registry."""
        self._commands: Dict[str, BaseCommand] = {}

    def register_command(self, command: BaseCommand) -> None:
        """Register a command instance.

        Args:
            command: The command to register

        Raises:
            CommandError: If a command with the same name exists
        """
        name = command.get_command_name()
        if name in self._commands:
            raise CommandError(f"Command already registered: {name}", {"command": name})
        self._commands[name] = command

    def get(self, name: str) -> BaseCommand:
        if name not in self._commands:
            raise CommandError(f"Unknown command: {name}", {"available": self.names()})
        return self._commands[name]

    def names(self) -> List[str]:
        return list(self._commands)

    def setup_all_commands(self, subparsers: Any, parents: List[argparse.ArgumentParser]) -> None:
        """Register every command with the argparse subparsers."""
        for command in self._commands.values():
            command.setup(subparsers, parents)
