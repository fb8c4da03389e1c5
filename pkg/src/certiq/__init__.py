"""certiq: certified robustness of smoothed quantum classifiers against parameter noise."""

import sys

__version__ = "0.1.0"


def main() -> None:
    from .cli import main as cli_main

    sys.exit(cli_main())


__all__ = ["main", "__version__"]
