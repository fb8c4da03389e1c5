"""certify: per-sample certificates and dataset robustness metrics."""

import argparse
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from ..base import BaseCommand, CommandContext
from ..constants import (
    CERTIFICATES_FILE_NAME, METRICS_CSV_NAME, METRICS_JSON_NAME, MODEL_FILE_NAME,
    TEST_FILE_NAME, PBoundMode, PredictMode
)
from ..dataset import load_dataset
from ..journal import run_id_for
from ..metrics import metrics_report
from ..model_store import load_model
from ..models.certification import MetricsReport
from ..rng import RandomStreams
from ..smoothing import certify_dataset, smoothed_accuracy
from ..utils import run_metadata, write_csv, write_json, write_jsonl

METRIC_COLUMNS = [
    "run_id", "cagm", "semi_axis_avg", "semi_axis_std", "smoothed_accuracy",
    "deployed_accuracy", "abstentions", "samples",
]


class CertifyInput(BaseModel):
    """Input for the certify command."""
    model: Optional[Path] = Field(None, description="Model file (defaults to <out>/model.json)")
    data: Optional[Path] = Field(None, description="Test dataset (defaults to <out>/test.jsonl)")
    n0: Optional[int] = None
    n: Optional[int] = None
    alpha: Optional[float] = None
    pb_mode: Optional[PBoundMode] = None
    deploy_samples: Optional[int] = None


class CertifyResult(BaseModel):
    """Files and metrics produced by certify."""
    run_id: str
    certificates_path: Path
    metrics_path: Path
    metrics_csv_path: Path
    report: MetricsReport


class CertifyCommand(BaseCommand[CertifyResult]):
    """Certify every test sample and aggregate the robustness metrics."""

    input_model = CertifyInput

    def get_command_name(self) -> str:
        return "certify"

    def get_command_description(self) -> str:
        return "Two-stage Monte-Carlo certification of a trained model on a test set"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--model", type=Path, default=None)
        parser.add_argument("--data", type=Path, default=None)
        parser.add_argument("--n0", type=int, default=None, help="selection shots")
        parser.add_argument("--n", type=int, default=None, help="estimation shots")
        parser.add_argument("--alpha", type=float, default=None, help="failure probability")
        parser.add_argument("--pb-mode", dest="pb_mode", choices=[m.value for m in PBoundMode],
                            default=None)
        parser.add_argument("--deploy-samples", dest="deploy_samples", type=int, default=None,
                            help="draws per point for the deployed (mean-prob) accuracy")

    def execute(self, context: CommandContext, **kwargs: Any) -> CertifyResult:
        params = self.parse_input(kwargs)
        record, model, circuit, readout = load_model(params.model or context.path(MODEL_FILE_NAME))
        _, samples = load_dataset(params.data or context.path(TEST_FILE_NAME))
        settings = context.certification_settings(params.model_dump(
            include={"n0", "n", "alpha", "pb_mode", "deploy_samples"}, exclude_none=True,
        ))

        streams = RandomStreams(context.seed)
        results = certify_dataset(model, samples, circuit, readout, settings,
                                  streams.child("certify"), threads=context.threads)
        deployed = smoothed_accuracy(model, samples, circuit, readout, settings.deploy_samples,
                                     streams.child("deploy"), PredictMode.MEAN_PROB)
        report = metrics_report(results, deployed_accuracy=deployed)
        run_id = run_id_for(record.config.model_dump(mode="json"), record.seed)

        certificates_path = write_jsonl(
            context.path(CERTIFICATES_FILE_NAME),
            (r.model_dump(mode="json") for r in results),
        )
        metrics_path = write_json(context.path(METRICS_JSON_NAME), {
            "run_id": run_id,
            "metrics": report.model_dump(mode="json"),
            "certification": settings.model_dump(mode="json"),
            "metadata": run_metadata(certified_classifier=settings.predict_mode.value,
                                     model=str(params.model or context.path(MODEL_FILE_NAME))),
        })
        row = report.model_dump()
        metrics_csv_path = write_csv(
            context.path(METRICS_CSV_NAME), METRIC_COLUMNS,
            [[run_id] + [row[c] for c in METRIC_COLUMNS[1:]]],
        )
        return CertifyResult(
            run_id=run_id,
            certificates_path=certificates_path,
            metrics_path=metrics_path,
            metrics_csv_path=metrics_csv_path,
            report=report,
        )

    def summarize(self, result: CertifyResult) -> str:
        r = result.report
        return (f"certify: smoothed accuracy {r.smoothed_accuracy:.3f}, CAGM {r.cagm:.3e}, "
                f"semi-axis avg {r.semi_axis_avg:.3e} (std {r.semi_axis_std:.3e}), "
                f"{r.abstentions}/{r.samples} abstained")
