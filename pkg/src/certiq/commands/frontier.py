"""frontier: best robustness per accuracy bin across a sweep."""

import argparse
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from ..analysis import DEFAULT_BIN_WIDTH, frontier_extract
from ..base import BaseCommand, CommandContext
from ..constants import FRONTIER_CSV_NAME, FRONTIER_JSON_NAME, JOURNAL_FILE_NAME, RobustnessMetric
from ..models.sweep import FrontierResult
from ..sweep import load_sweep_records
from ..utils import run_metadata, write_csv, write_json

FRONTIER_COLUMNS = ["accuracy_bin", "bin_low", "accuracy", "metric_value", "run_id"]


class FrontierInput(BaseModel):
    """Input for the frontier command."""
    journal: Optional[Path] = Field(None, description="Sweep journal or sweep.csv (defaults to <out>/journal.jsonl)")
    metric: RobustnessMetric = RobustnessMetric.CAGM
    bin_width: float = Field(DEFAULT_BIN_WIDTH, gt=0.0)


class FrontierCommandResult(BaseModel):
    csv_path: Path
    json_path: Path
    frontier: FrontierResult


class FrontierCommand(BaseCommand[FrontierCommandResult]):
    """Extract the robustness/accuracy frontier and fit a line through it."""

    input_model = FrontierInput

    def get_command_name(self) -> str:
        return "frontier"

    def get_command_description(self) -> str:
        return "Keep the most robust run per smoothed-accuracy bin and fit a line through the frontier"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--journal", type=Path, default=None)
        parser.add_argument("--metric", choices=[m.value for m in RobustnessMetric],
                            default=RobustnessMetric.CAGM.value)
        parser.add_argument("--bin-width", dest="bin_width", type=float, default=DEFAULT_BIN_WIDTH)

    def execute(self, context: CommandContext, **kwargs: Any) -> FrontierCommandResult:
        params = self.parse_input(kwargs)
        source = params.journal or context.path(JOURNAL_FILE_NAME)
        frontier = frontier_extract(load_sweep_records(source), params.metric, params.bin_width)

        csv_path = write_csv(
            context.path(FRONTIER_CSV_NAME), FRONTIER_COLUMNS,
            [[getattr(p, c) for c in FRONTIER_COLUMNS] for p in frontier.points],
        )
        json_path = write_json(context.path(FRONTIER_JSON_NAME), {
            "frontier": frontier.model_dump(mode="json"),
            "metadata": run_metadata(source=str(source)),
        })
        return FrontierCommandResult(csv_path=csv_path, json_path=json_path, frontier=frontier)

    def summarize(self, result: FrontierCommandResult) -> str:
        fit = result.frontier.fit
        line = (f"slope {fit.slope:.3e}, intercept {fit.intercept:.3e}" if fit.defined
                else f"no fit ({fit.reason})")
        return f"frontier: {len(result.frontier.points)} points on {result.frontier.metric.value}, {line}"
