"""gen-data: labelled ground-state train/test splits."""

import argparse
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from ..base import BaseCommand, CommandContext
from ..config import get_settings
from ..constants import DEFAULT_TEST_SIZE, DEFAULT_TRAIN_SIZE, TEST_FILE_NAME, TRAIN_FILE_NAME
from ..dataset import gen_split, save_dataset
from ..models.cluster import ClusterParams
from ..phases import load_phase_boundaries
from ..rng import RandomStreams


class GenDataInput(BaseModel):
    """Input for the gen-data command."""
    qubits: int = Field(description="Chain length")
    train: int = Field(DEFAULT_TRAIN_SIZE, ge=1, description="Training samples")
    test: int = Field(DEFAULT_TEST_SIZE, ge=1, description="Test samples")
    boundaries: Optional[Path] = Field(None, description="Phase boundary file")


class GenDataResult(BaseModel):
    """Files written by gen-data."""
    train_path: Path
    test_path: Path
    n_qubits: int
    train_count: int
    test_count: int
    spec_hash: str
    train_labels: Dict[int, int] = Field(description="Class histogram of the training split")


class GenDataCommand(BaseCommand[GenDataResult]):
    """Generate mutually exclusive train and test datasets."""

    input_model = GenDataInput

    def get_command_name(self) -> str:
        return "gen-data"

    def get_command_description(self) -> str:
        return "Sample couplings uniformly, solve ground states and write train/test JSON-lines files"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--qubits", type=int, default=4, help="chain length (>= 3)")
        parser.add_argument("--train", type=int, default=DEFAULT_TRAIN_SIZE, help="training samples")
        parser.add_argument("--test", type=int, default=DEFAULT_TEST_SIZE, help="test samples")
        parser.add_argument("--boundaries", type=Path, default=None,
                            help="phase boundary file (shipped default when omitted)")

    def execute(self, context: CommandContext, **kwargs: Any) -> GenDataResult:
        params = self.parse_input(kwargs)
        ClusterParams(n_qubits=params.qubits, j1=0.0, j2=0.0)
        spec = load_phase_boundaries(params.boundaries)
        settings = get_settings()

        train, test = gen_split(
            params.qubits, params.train, params.test, context.seed, spec,
            threads=context.threads, max_qubits=settings.max_qubits,
        )
        streams = RandomStreams(context.seed)
        train_path = context.path(TRAIN_FILE_NAME)
        test_path = context.path(TEST_FILE_NAME)
        save_dataset(train, train_path, streams.seed("split", 0), spec.spec_hash)
        save_dataset(test, test_path, streams.seed("split", 1), spec.spec_hash)

        return GenDataResult(
            train_path=train_path,
            test_path=test_path,
            n_qubits=params.qubits,
            train_count=len(train),
            test_count=len(test),
            spec_hash=spec.spec_hash,
            train_labels=dict(sorted(Counter(s.label for s in train).items())),
        )

    def summarize(self, result: GenDataResult) -> str:
        return (f"gen-data: {result.train_count} train / {result.test_count} test samples on "
                f"{result.n_qubits} qubits, train labels {result.train_labels}")
