"""File output helpers shared by the commands."""

import csv
import hashlib
import json
import platform
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import scipy

from .. import __version__


def canonical_json(data: Any) -> str:
    """Key-sorted compact JSON, the form hashed for identifiers."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def stable_hash(data: Any, length: Optional[int] = None) -> str:
    """sha256 hex digest of canonical JSON, optionally truncated.

    Args:
        data: JSON-serializable value
        length: Number of hex characters to keep

    Returns:
        Hex digest
    """
    digest = hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
    return digest[:length] if length else digest


def run_metadata(**choices: Any) -> Dict[str, Any]:
    """Timestamps, versions and recorded choices; excluded from determinism comparisons."""
    return {
        "created_at": datetime.now(timezone.utc).isoformat(),
        "certiq_version": __version__,
        "numpy_version": np.__version__,
        "scipy_version": scipy.__version__,
        "python_version": platform.python_version(),
        "choices": choices,
    }


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def write_jsonl(path: Path, rows: Iterable[Dict[str, Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(canonical_json(row) + "\n")
    return path


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a tidy CSV; floats use repr so reruns are byte-identical."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return path


def read_csv(path: Path) -> List[Dict[str, str]]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))
