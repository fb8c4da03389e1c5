"""correlation: semi-axis spread against robustness for accurate runs."""

import argparse
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from ..analysis import DEFAULT_BIN_WIDTH, DEFAULT_CORRELATION_BINS, correlation_extract
from ..base import BaseCommand, CommandContext
from ..constants import CORRELATION_CSV_NAME, CORRELATION_JSON_NAME, JOURNAL_FILE_NAME, RobustnessMetric
from ..models.sweep import CorrelationBin, CorrelationResult
from ..sweep import load_sweep_records
from ..utils import run_metadata, write_csv, write_json

CORRELATION_COLUMNS = list(CorrelationBin.model_fields)


class CorrelationInput(BaseModel):
    """Input for the correlation command."""
    journal: Optional[Path] = Field(None, description="Sweep journal or sweep.csv (defaults to <out>/journal.jsonl)")
    metric: RobustnessMetric = RobustnessMetric.CAGM
    min_accuracy: Optional[float] = Field(None, ge=0.0, le=1.0,
                                          description="Defaults to the lowest frontier accuracy")
    bins: int = Field(DEFAULT_CORRELATION_BINS, ge=1)
    bin_width: float = Field(DEFAULT_BIN_WIDTH, gt=0.0)


class CorrelationCommandResult(BaseModel):
    csv_path: Path
    json_path: Path
    correlation: CorrelationResult


class CorrelationCommand(BaseCommand[CorrelationCommandResult]):
    """Bin accurate runs by robustness and report their semi-axis spread."""

    input_model = CorrelationInput

    def get_command_name(self) -> str:
        return "correlation"

    def get_command_description(self) -> str:
        return "Per robustness bin, mean and std of the semi-axis standard deviation, plus a global fit"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--journal", type=Path, default=None)
        parser.add_argument("--metric", choices=[m.value for m in RobustnessMetric],
                            default=RobustnessMetric.CAGM.value)
        parser.add_argument("--min-accuracy", dest="min_accuracy", type=float, default=None)
        parser.add_argument("--bins", type=int, default=DEFAULT_CORRELATION_BINS)
        parser.add_argument("--bin-width", dest="bin_width", type=float, default=DEFAULT_BIN_WIDTH,
                            help="accuracy bin width used to derive the default --min-accuracy")

    def execute(self, context: CommandContext, **kwargs: Any) -> CorrelationCommandResult:
        params = self.parse_input(kwargs)
        source = params.journal or context.path(JOURNAL_FILE_NAME)
        correlation = correlation_extract(
            load_sweep_records(source), params.metric, params.min_accuracy,
            n_bins=params.bins, bin_width=params.bin_width,
        )
        csv_path = write_csv(
            context.path(CORRELATION_CSV_NAME), CORRELATION_COLUMNS,
            [[getattr(b, c) for c in CORRELATION_COLUMNS] for b in correlation.bins],
        )
        json_path = write_json(context.path(CORRELATION_JSON_NAME), {
            "correlation": correlation.model_dump(mode="json"),
            "metadata": run_metadata(source=str(source)),
        })
        return CorrelationCommandResult(csv_path=csv_path, json_path=json_path, correlation=correlation)

    def summarize(self, result: CorrelationCommandResult) -> str:
        c = result.correlation
        slope = f"slope {c.fit.slope:.3e}" if c.fit.defined else f"no fit ({c.fit.reason})"
        return (f"correlation: {c.records_used} runs above accuracy {c.min_accuracy:.3f} "
                f"in {len(c.bins)} bins, {slope}")
