"""hp-sweep: resumable randomized hyperparameter sweep."""

import argparse
import logging
from pathlib import Path
from typing import Any, List, Optional

from pydantic import BaseModel, Field

from ..base import BaseCommand, CommandContext
from ..config import get_config_loader, load_user_config
from ..constants import JOURNAL_FILE_NAME, SWEEP_CSV_NAME, TEST_FILE_NAME, TRAIN_FILE_NAME, RunStatus
from ..dataset import load_dataset
from ..journal import RunJournal
from ..models.sweep import SweepRecord
from ..qcnn import build_qcnn
from ..rng import RandomStreams
from ..sweep import SWEEP_CSV_COLUMNS, parse_search_space, plan_runs, run_sweep, sweep_csv_rows
from ..utils import write_csv

logger = logging.getLogger(__name__)


class HpSweepInput(BaseModel):
    """Input for the hp-sweep command."""
    budget: int = Field(3, ge=1, description="Number of sampled configurations")
    search_space: Optional[Path] = Field(None, description="Search-space file (shipped ranges when omitted)")
    train_data: Optional[Path] = Field(None, description="Defaults to <out>/train.jsonl")
    test_data: Optional[Path] = Field(None, description="Defaults to <out>/test.jsonl")
    iterations: Optional[int] = Field(None, ge=1, description="sNES iterations for every run")


class HpSweepResult(BaseModel):
    """Journal and table written by hp-sweep."""
    journal_path: Path
    csv_path: Path
    records: List[SweepRecord]

    @property
    def completed(self) -> int:
        return sum(1 for r in self.records if r.status == RunStatus.COMPLETED)


class HpSweepCommand(BaseCommand[HpSweepResult]):
    """Sample sNES hyperparameters, then train and certify each configuration."""

    input_model = HpSweepInput

    def get_command_name(self) -> str:
        return "hp-sweep"

    def get_command_description(self) -> str:
        return "Randomized hyperparameter sweep; results are journalled so an interrupted sweep resumes"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--budget", type=int, default=3, help="number of runs")
        parser.add_argument("--search-space", dest="search_space", type=Path, default=None)
        parser.add_argument("--train-data", dest="train_data", type=Path, default=None)
        parser.add_argument("--test-data", dest="test_data", type=Path, default=None)
        parser.add_argument("--iterations", type=int, default=None)

    def execute(self, context: CommandContext, **kwargs: Any) -> HpSweepResult:
        params = self.parse_input(kwargs)
        document = (load_user_config(params.search_space) if params.search_space
                    else get_config_loader().load_hp_search_space())
        space = parse_search_space(document)
        base = context.snes_config({"iterations": params.iterations})
        configs = plan_runs(base, space, params.budget, RandomStreams(context.seed))

        header, train_set = load_dataset(params.train_data or context.path(TRAIN_FILE_NAME))
        _, test_set = load_dataset(params.test_data or context.path(TEST_FILE_NAME))
        circuit, readout = build_qcnn(context.qcnn_spec(header.n_qubits))
        cert = context.certification_settings()

        journal_path = context.path(JOURNAL_FILE_NAME)
        records = run_sweep(configs, circuit, readout, train_set, test_set, cert,
                            RunJournal(journal_path), threads=context.threads)
        csv_path = write_csv(context.path(SWEEP_CSV_NAME), SWEEP_CSV_COLUMNS, sweep_csv_rows(records))
        return HpSweepResult(journal_path=journal_path, csv_path=csv_path, records=records)

    def summarize(self, result: HpSweepResult) -> str:
        return (f"hp-sweep: {result.completed}/{len(result.records)} runs completed, "
                f"journal {result.journal_path}")
