"""certiq subcommands."""

from ..base import CommandRegistry
from .gen_data import GenDataCommand
from .train import TrainCommand
from .certify import CertifyCommand
from .noise_sweep import NoiseSweepCommand
from .hp_sweep import HpSweepCommand
from .frontier import FrontierCommand
from .correlation import CorrelationCommand


def build_registry() -> CommandRegistry:
    """Registry holding every subcommand, in help order."""
    registry = CommandRegistry()
    for command in (GenDataCommand(), TrainCommand(), CertifyCommand(), NoiseSweepCommand(),
                    HpSweepCommand(), FrontierCommand(), CorrelationCommand()):
        registry.register_command(command)
    return registry


__all__ = [
    "build_registry",
    "GenDataCommand",
    "TrainCommand",
    "CertifyCommand",
    "NoiseSweepCommand",
    "HpSweepCommand",
    "FrontierCommand",
    "CorrelationCommand"
]
