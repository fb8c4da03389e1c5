"""Command-line entry point for certiq."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from . import __version__
from .base import CommandContext, CommandRegistry
from .commands import build_registry
from .config import Settings, get_settings, load_user_config
from .constants import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE
from .exceptions import CertiqError, InvalidConfigurationError, NumericalError

logger = logging.getLogger("certiq")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps subparser copies of these flags from overwriting main-parser values
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (default 0)")
    parser.add_argument("--config", type=Path, default=argparse.SUPPRESS,
                        help="YAML/JSON file with training/certification/noise_sweep/qcnn sections")
    parser.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="output directory")
    parser.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (falls back to CERTIQ_THREADS)")
    parser.add_argument("--log-level", dest="log_level", default=argparse.SUPPRESS,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    return parser


def build_parser(registry: Optional[CommandRegistry] = None) -> argparse.ArgumentParser:
    """The full parser with every registered subcommand."""
    if registry is None:
        registry = build_registry()
    common = _global_flags()
    parser = argparse.ArgumentParser(
        prog="certiq",
        description="Train, certify and analyse smoothed QCNN phase classifiers",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"certiq {__version__}")
    subparsers = parser.add_subparsers(dest="command_name", metavar="COMMAND", required=True)
    registry.setup_all_commands(subparsers, [common])
    return parser


def build_context(args: argparse.Namespace, settings: Settings) -> CommandContext:
    """Resolve the global flags against the environment settings.

    Raises:
        ConfigurationError: If --config is unreadable or a global flag is out of range
    """
    config_path = getattr(args, "config", None)
    user_config = load_user_config(config_path) if config_path else {}
    try:
        context = CommandContext(
            seed=getattr(args, "seed", 0),
            out_dir=Path(getattr(args, "out", settings.output_dir)),
            threads=getattr(args, "threads", settings.threads),
            user_config=user_config,
        )
    except ValidationError as e:
        error = e.errors()[0]
        raise InvalidConfigurationError(".".join(str(p) for p in error["loc"]), error.get("input"), error["msg"])
    context.out_dir.mkdir(parents=True, exist_ok=True)
    return context


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and map failures to exit codes.

    Returns:
        0 on success, 2 for invalid input or configuration, 3 for numerical failures
    """
    registry = build_registry()
    args = build_parser(registry).parse_args(argv)
    command = registry.get(args.command_name)

    try:
        settings = get_settings()
    except CertiqError as e:
        logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
        logger.error("Invalid environment settings: %s", e.to_dict())
        return EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, getattr(args, "log_level", settings.log_level)),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        result = command.run(build_context(args, settings), args)
    except NumericalError as e:
        logger.error("%s failed: %s", command.get_command_name(), e.to_dict())
        return EXIT_NUMERICAL
    except CertiqError as e:
        logger.error("%s failed: %s", command.get_command_name(), e.to_dict())
        return EXIT_USAGE

    print(command.summarize(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
