"""noise-sweep: plain versus smoothed accuracy under injected parameter noise."""

import argparse
import logging
from pathlib import Path
from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy import special

from ..base import BaseCommand, CommandContext
from ..config import get_settings
from ..constants import (
    MODEL_FILE_NAME, NOISE_SWEEP_FILE_NAME, NOISE_SWEEP_JSON_NAME, PLAIN_MODEL_FILE_NAME,
    TEST_FILE_NAME, PredictMode
)
from ..dataset import load_dataset
from ..exceptions import InvalidConfigurationError
from ..model_store import load_model
from ..models.certification import SmoothedModel
from ..models.sweep import NoiseSweepRow, NoiseSweepSettings
from ..rng import RandomStreams
from ..smoothing import smoothed_predictions
from ..statevector import classifier_eval_batch
from ..utils import run_metadata, write_csv, write_json

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = list(NoiseSweepRow.model_fields)


class NoiseSweepInput(BaseModel):
    """Input for the noise-sweep command."""
    smoothed_model: Optional[Path] = Field(None, description="Defaults to <out>/model.json")
    plain_model: Optional[Path] = Field(None, description="Defaults to <out>/model_plain.json")
    data: Optional[Path] = Field(None, description="Defaults to <out>/test.jsonl")
    scales: Optional[List[float]] = None
    draws: Optional[int] = None
    test_points: Optional[int] = None
    smoothing_samples: Optional[int] = None


class NoiseSweepResult(BaseModel):
    """Table written by noise-sweep."""
    csv_path: Path
    json_path: Path
    rows: List[NoiseSweepRow]


def normal_interval(hits: np.ndarray, confidence: float) -> Tuple[float, float, float]:
    """Mean accuracy and its normal-approximation interval over noise draws."""
    mean = float(hits.mean())
    if hits.size < 2:
        return mean, mean, mean
    z = float(special.ndtri(0.5 + confidence / 2.0))
    half = z * float(hits.std(ddof=1)) / np.sqrt(hits.size)
    return mean, max(0.0, mean - half), min(1.0, mean + half)


class NoiseSweepCommand(BaseCommand[NoiseSweepResult]):
    """Compare a smoothed and a plain model under growing parameter noise."""

    input_model = NoiseSweepInput

    def get_command_name(self) -> str:
        return "noise-sweep"

    def get_command_description(self) -> str:
        return "Inject N(0, (c sigma)^2) parameter noise and tabulate plain vs smoothed test accuracy"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--smoothed-model", dest="smoothed_model", type=Path, default=None)
        parser.add_argument("--plain-model", dest="plain_model", type=Path, default=None)
        parser.add_argument("--data", type=Path, default=None)
        parser.add_argument("--scales", type=float, nargs="+", default=None,
                            help="noise scales as multiples of the smoothed sigma")
        parser.add_argument("--draws", type=int, default=None)
        parser.add_argument("--test-points", dest="test_points", type=int, default=None)
        parser.add_argument("--smoothing-samples", dest="smoothing_samples", type=int, default=None)

    def execute(self, context: CommandContext, **kwargs: Any) -> NoiseSweepResult:
        params = self.parse_input(kwargs)
        settings: NoiseSweepSettings = context.noise_sweep_settings(params.model_dump(
            include={"scales", "draws", "test_points", "smoothing_samples"}, exclude_none=True,
        ))
        if settings.ci_method != "normal":
            raise InvalidConfigurationError("ci_method", settings.ci_method, "only 'normal' is supported")
        _, smoothed, circuit, readout = load_model(params.smoothed_model or context.path(MODEL_FILE_NAME))
        _, plain, plain_circuit, plain_readout = load_model(params.plain_model or context.path(PLAIN_MODEL_FILE_NAME))
        if plain_circuit.param_count != circuit.param_count:
            raise InvalidConfigurationError(
                "plain_model", plain_circuit.param_count,
                f"expected {circuit.param_count} parameters like the smoothed model"
            )
        _, samples = load_dataset(params.data or context.path(TEST_FILE_NAME))
        points = samples[:settings.test_points]
        states = np.stack([s.state.amplitudes for s in points])
        labels = np.array([s.label for s in points])
        chunk = get_settings().simulation_batch
        streams = RandomStreams(context.seed)

        rows: List[NoiseSweepRow] = []
        for si, scale in enumerate(settings.scales):
            plain_hits = np.zeros(settings.draws)
            smooth_hits = np.zeros(settings.draws)
            norms = np.zeros(settings.draws)
            for d in range(settings.draws):
                delta = scale * smoothed.sigma * streams.stream("noise", si, d).standard_normal(smoothed.dimension)
                norms[d] = float(np.linalg.norm(delta))
                thetas = np.broadcast_to(plain.theta + delta, (len(points), plain.dimension))
                probs = classifier_eval_batch(plain_circuit, plain_readout, states, thetas, chunk=chunk)
                plain_hits[d] = np.mean(np.argmax(probs, axis=1) == labels)
                shifted = SmoothedModel(theta=smoothed.theta + delta, sigma=smoothed.sigma)
                predicted = smoothed_predictions(
                    shifted, states, circuit, readout, settings.smoothing_samples,
                    streams.stream("smooth", si, d), PredictMode.MEAN_PROB,
                )
                smooth_hits[d] = np.mean(predicted == labels)
            plain_mean, plain_low, plain_high = normal_interval(plain_hits, settings.confidence)
            smooth_mean, smooth_low, smooth_high = normal_interval(smooth_hits, settings.confidence)
            rows.append(NoiseSweepRow(
                scale=scale, noise_norm=float(norms.mean()),
                plain_accuracy=plain_mean, plain_ci_low=plain_low, plain_ci_high=plain_high,
                smoothed_accuracy=smooth_mean, smoothed_ci_low=smooth_low, smoothed_ci_high=smooth_high,
            ))
            logger.info("scale %.2f: plain %.3f, smoothed %.3f", scale, plain_mean, smooth_mean)

        csv_path = write_csv(
            context.path(NOISE_SWEEP_FILE_NAME), SWEEP_COLUMNS,
            [[getattr(r, c) for c in SWEEP_COLUMNS] for r in rows],
        )
        json_path = write_json(context.path(NOISE_SWEEP_JSON_NAME), {
            "rows": [r.model_dump() for r in rows],
            "metadata": run_metadata(**settings.model_dump(mode="json")),
        })
        return NoiseSweepResult(csv_path=csv_path, json_path=json_path, rows=rows)

    def summarize(self, result: NoiseSweepResult) -> str:
        parts = [f"{r.scale:g}: {r.plain_accuracy:.2f}/{r.smoothed_accuracy:.2f}" for r in result.rows]
        return "noise-sweep (scale: plain/smoothed) " + ", ".join(parts)
