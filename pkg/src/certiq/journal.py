"""Append-only JSON-lines journal of sweep runs, keyed by run id."""

import json
import logging
import threading
from pathlib import Path
from typing import Any, Dict, List, Set

from pydantic import ValidationError

from .constants import RunStatus
from .exceptions import ConfigurationError
from .models.sweep import SweepRecord
from .utils import canonical_json, stable_hash

logger = logging.getLogger(__name__)

RUN_ID_LENGTH = 12


def run_id_for(config: Dict[str, Any], seed: int) -> str:
    """Stable identifier of a (config, seed) pair."""
    return stable_hash({"config": config, "seed": seed}, RUN_ID_LENGTH)


class RunJournal:
    """Journal file shared by the workers of one sweep."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def records(self) -> List[SweepRecord]:
        """Parsed records; a torn final line from an interrupted write is skipped."""
        if not self.path.exists():
            return []
        with open(self.path, "r", encoding="utf-8") as f:
            lines = [line for line in f.read().split("\n") if line.strip()]
        out: List[SweepRecord] = []
        for number, line in enumerate(lines):
            try:
                out.append(SweepRecord.model_validate(json.loads(line)))
            except (json.JSONDecodeError, ValidationError, ConfigurationError) as e:
                logger.warning("Skipping unreadable journal line %d in %s: %s",
                               number + 1, self.path, str(e).splitlines()[0])
        return out

    def latest(self) -> List[SweepRecord]:
        """One record per run id (the last written), ordered by sweep index."""
        by_id: Dict[str, SweepRecord] = {}
        for r in self.records():
            by_id[r.run_id] = r
        return sorted(by_id.values(), key=lambda r: r.index)

    def completed_ids(self) -> Set[str]:
        return {r.run_id for r in self.records() if r.status == RunStatus.COMPLETED}

    def append(self, record: SweepRecord) -> None:
        line = canonical_json(record.model_dump(mode="json")) + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            torn = self.path.exists() and self.path.stat().st_size > 0 and not self._ends_with_newline()
            with open(self.path, "a", encoding="utf-8") as f:
                if torn:
                    f.write("\n")
                f.write(line)

    def _ends_with_newline(self) -> bool:
        with open(self.path, "rb") as f:
            f.seek(-1, 2)
            return f.read(1) == b"\n"
