"""Reading and writing trained model files."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from pydantic import ValidationError

from .constants import MODEL_FORMAT_VERSION
from .exceptions import ConfigurationError
from .models.certification import SmoothedModel
from .models.circuit import ClassReadout, ParamCircuit
from .models.qcnn import QcnnSpec
from .models.training import ModelFile, SnesConfig
from .qcnn import build_qcnn, circuit_hash
from .utils import write_json

logger = logging.getLogger(__name__)


def save_model(path: Path, model: SmoothedModel, spec: QcnnSpec, config: SnesConfig,
               plain: bool = False, metadata: Optional[Dict[str, Any]] = None) -> Path:
    """Write {theta, sigma, circuit hash, config, seed} as JSON."""
    circuit, _ = build_qcnn(spec)
    record = ModelFile(
        theta=[float(v) for v in model.theta],
        sigma=[float(v) for v in model.sigma],
        circuit_hash=circuit_hash(circuit),
        qcnn=spec,
        config=config,
        seed=config.seed,
        plain=plain,
        metadata=metadata or {},
    )
    logger.info("Saving %s model with %d parameters to %s",
                "plain" if plain else "smoothed", model.dimension, path)
    return write_json(path, record.model_dump(mode="json"))


def load_model(path: Path) -> Tuple[ModelFile, SmoothedModel, ParamCircuit, ClassReadout]:
    """Read a model file and rebuild its classifier.

    Raises:
        ConfigurationError: If the file is unreadable, from another format
            version, or its circuit hash does not match the rebuilt circuit
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            record = ModelFile.model_validate(json.load(f))
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        raise ConfigurationError(f"Cannot read model file {path}", {"error": str(e)})
    if record.version != MODEL_FORMAT_VERSION:
        raise ConfigurationError(
            f"Model format version {record.version} is not supported",
            {"expected": MODEL_FORMAT_VERSION, "file": str(path)}
        )
    circuit, readout = build_qcnn(record.qcnn)
    found = circuit_hash(circuit)
    if found != record.circuit_hash:
        raise ConfigurationError(
            "Model circuit hash does not match the rebuilt circuit",
            {"stored": record.circuit_hash, "rebuilt": found, "file": str(path)}
        )
    model = SmoothedModel(theta=record.theta, sigma=record.sigma)
    return record, model, circuit, readout
