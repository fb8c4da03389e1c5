"""train: robust sNES training of the QCNN classifier."""

import argparse
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from ..base import BaseCommand, CommandContext
from ..constants import (
    CIRCUIT_FILE_NAME, HISTORY_FILE_NAME, MODEL_FILE_NAME, PLAIN_CIRCUIT_FILE_NAME,
    PLAIN_HISTORY_FILE_NAME, PLAIN_MODEL_FILE_NAME, TRAIN_FILE_NAME, RegularizerKind
)
from ..dataset import load_dataset
from ..model_store import save_model
from ..qcnn import build_qcnn, export_circuit
from ..training import as_plain_model, plain_baseline_config, train
from ..utils import run_metadata, write_json


class TrainInput(BaseModel):
    """Input for the train command."""
    data: Optional[Path] = Field(None, description="Training dataset (defaults to <out>/train.jsonl)")
    plain: bool = Field(False, description="Train the unregularized baseline")
    iterations: Optional[int] = None
    population: Optional[int] = None
    eta_theta: Optional[float] = None
    eta_sigma: Optional[float] = None
    eta_r: Optional[float] = None
    sigma0: Optional[float] = None
    reg_kind: Optional[RegularizerKind] = None
    batch_size: Optional[int] = None
    conv_reps: Optional[int] = None


class TrainResult(BaseModel):
    """Files written by train."""
    model_path: Path
    history_path: Path
    circuit_path: Path
    parameters: int
    iterations: int
    final_accuracy: Optional[float] = None
    mean_sigma: float
    plain: bool


class TrainCommand(BaseCommand[TrainResult]):
    """Train a smoothed (or plain baseline) classifier."""

    input_model = TrainInput

    def get_command_name(self) -> str:
        return "train"

    def get_command_description(self) -> str:
        return "Train the QCNN classifier with sNES over (theta, sigma) and write model JSON + history CSV"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--data", type=Path, default=None, help="training dataset")
        parser.add_argument("--plain", action="store_true", help="train the plain baseline")
        parser.add_argument("--iterations", type=int, default=None)
        parser.add_argument("--population", type=int, default=None)
        parser.add_argument("--eta-theta", dest="eta_theta", type=float, default=None)
        parser.add_argument("--eta-sigma", dest="eta_sigma", type=float, default=None)
        parser.add_argument("--eta-r", dest="eta_r", type=float, default=None)
        parser.add_argument("--sigma0", type=float, default=None)
        parser.add_argument("--reg-kind", dest="reg_kind", choices=[k.value for k in RegularizerKind],
                            default=None)
        parser.add_argument("--batch-size", dest="batch_size", type=int, default=None)
        parser.add_argument("--conv-reps", dest="conv_reps", type=int, default=None)

    def execute(self, context: CommandContext, **kwargs: Any) -> TrainResult:
        params = self.parse_input(kwargs)
        header, samples = load_dataset(params.data or context.path(TRAIN_FILE_NAME))
        spec = context.qcnn_spec(header.n_qubits, {"conv_reps": params.conv_reps})
        circuit, readout = build_qcnn(spec)

        overrides = params.model_dump(
            include={"iterations", "population", "eta_theta", "eta_sigma", "eta_r",
                     "sigma0", "reg_kind", "batch_size"},
            exclude_none=True,
        )
        config = context.snes_config(overrides)
        if params.plain:
            config = plain_baseline_config(config)

        model, history = train(circuit, readout, samples, config)
        if params.plain:
            model = as_plain_model(model)

        model_path = context.path(PLAIN_MODEL_FILE_NAME if params.plain else MODEL_FILE_NAME)
        history_path = context.path(PLAIN_HISTORY_FILE_NAME if params.plain else HISTORY_FILE_NAME)
        save_model(model_path, model, spec, config, plain=params.plain,
                   metadata=run_metadata(dataset=str(params.data or context.path(TRAIN_FILE_NAME)),
                                         dataset_spec_hash=header.spec_hash))
        history.to_csv(history_path)
        circuit_path = write_json(
            context.path(PLAIN_CIRCUIT_FILE_NAME if params.plain else CIRCUIT_FILE_NAME),
            export_circuit(circuit, readout),
        )

        return TrainResult(
            model_path=model_path,
            history_path=history_path,
            circuit_path=circuit_path,
            parameters=circuit.param_count,
            iterations=config.iterations,
            final_accuracy=history.records[-1].acc if history.records else None,
            mean_sigma=float(model.sigma.mean()),
            plain=params.plain,
        )

    def summarize(self, result: TrainResult) -> str:
        acc = "n/a" if result.final_accuracy is None else f"{result.final_accuracy:.3f}"
        kind = "plain" if result.plain else "smoothed"
        return (f"train: {kind} model with {result.parameters} parameters after "
                f"{result.iterations} iterations, batch accuracy {acc}, mean sigma {result.mean_sigma:.3e}")
