"""Randomized hyperparameter sweeps: sampling, single runs and the sweep loop."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from .constants import RunStatus
from .exceptions import CertiqError, ConfigurationError, InvalidConfigurationError
from .journal import RunJournal, run_id_for
from .metrics import metrics_report
from .models.certification import CertificationSettings
from .models.circuit import ClassReadout, ParamCircuit
from .models.cluster import Sample
from .models.sweep import SearchDimension, SweepRecord
from .models.training import SnesConfig
from .rng import RandomStreams
from .smoothing import certify_dataset
from .training import train
from .utils import read_csv

logger = logging.getLogger(__name__)


def parse_search_space(document: Dict[str, Any]) -> Dict[str, SearchDimension]:
    """Validate a search-space mapping of hyperparameter name to dimension."""
    try:
        space = {name: SearchDimension.model_validate(spec) for name, spec in document.items()}
    except ValidationError as e:
        raise InvalidConfigurationError("search_space", "", str(e).splitlines()[0])
    unknown = set(space) - set(SnesConfig.model_fields)
    if unknown:
        raise InvalidConfigurationError("search_space", sorted(unknown), "not SnesConfig fields")
    return space


def sample_hyperparameters(space: Dict[str, SearchDimension],
                           rng: np.random.Generator) -> Dict[str, Any]:
    """One draw: integers uniform, rates log-uniform, categories uniform."""
    values: Dict[str, Any] = {}
    for name in sorted(space):
        dim = space[name]
        if dim.kind == "int_uniform":
            values[name] = int(rng.integers(int(dim.low), int(dim.high) + 1))
        elif dim.kind == "uniform":
            values[name] = float(rng.uniform(dim.low, dim.high))
        elif dim.kind == "log_uniform":
            values[name] = float(math.exp(rng.uniform(math.log(dim.low), math.log(dim.high))))
            values[name] = min(max(values[name], dim.low), dim.high)
        else:
            values[name] = dim.values[int(rng.integers(len(dim.values)))]
    return values


def plan_runs(base: SnesConfig, space: Dict[str, SearchDimension], budget: int,
              streams: RandomStreams) -> List[SnesConfig]:
    """The first `budget` configurations of the sweep, independent of the budget."""
    configs = []
    for index in range(budget):
        drawn = sample_hyperparameters(space, streams.stream("hp", index))
        drawn["seed"] = streams.seed("run", index)
        configs.append(SnesConfig.model_validate({**base.model_dump(), **drawn}))
    return configs


def run_once(config: SnesConfig, index: int, circuit: ParamCircuit, readout: ClassReadout,
             train_set: Sequence[Sample], test_set: Sequence[Sample],
             cert: CertificationSettings) -> SweepRecord:
    """Train and certify one configuration; any error becomes a failed record."""
    snapshot = config.model_dump(mode="json")
    run_id = run_id_for(snapshot, config.seed)
    try:
        model, _ = train(circuit, readout, train_set, config)
        results = certify_dataset(
            model, test_set, circuit, readout, cert, RandomStreams(config.seed).child("certify"),
            threads=1,
        )
        report = metrics_report(results)
    except CertiqError as e:
        logger.warning("Sweep run %s failed: %s", run_id, e.message)
        return SweepRecord(run_id=run_id, index=index, hyperparameters=snapshot,
                           status=RunStatus.FAILED, error=e.to_dict())
    except Exception as e:
        logger.exception("Sweep run %s raised %s", run_id, type(e).__name__)
        return SweepRecord(run_id=run_id, index=index, hyperparameters=snapshot,
                           status=RunStatus.FAILED,
                           error={"error": type(e).__name__, "message": str(e), "details": {}})
    return SweepRecord(run_id=run_id, index=index, hyperparameters=snapshot,
                       metrics=report, status=RunStatus.COMPLETED)


def run_sweep(configs: Sequence[SnesConfig], circuit: ParamCircuit, readout: ClassReadout,
              train_set: Sequence[Sample], test_set: Sequence[Sample],
              cert: CertificationSettings, journal: RunJournal,
              threads: Optional[int] = 1) -> List[SweepRecord]:
    """Run every configuration not yet completed in the journal.

    Runs execute in a worker pool; records are journalled in sweep order as
    they become available.
    """
    done = journal.completed_ids()
    pending = [
        (i, c) for i, c in enumerate(configs)
        if run_id_for(c.model_dump(mode="json"), c.seed) not in done
    ]
    logger.info("Sweep: %d runs planned, %d already completed", len(configs), len(configs) - len(pending))
    with ThreadPoolExecutor(max_workers=threads or 1) as pool:
        for record in pool.map(
            lambda item: run_once(item[1], item[0], circuit, readout, train_set, test_set, cert),
            pending,
        ):
            journal.append(record)
    return journal.latest()


SWEEP_CSV_COLUMNS = [
    "run_id", "index", "status", "population", "eta_theta", "eta_sigma", "eta_r", "sigma0",
    "reg_kind", "seed", "smoothed_accuracy", "cagm", "semi_axis_avg", "semi_axis_std",
]
_METRIC_COLUMNS = ("smoothed_accuracy", "cagm", "semi_axis_avg", "semi_axis_std")


def sweep_csv_rows(records: Sequence[SweepRecord]) -> List[List[Any]]:
    """One flat row per record; metric cells are empty for failed runs."""
    rows = []
    for r in records:
        hp = r.hyperparameters
        metrics = r.metrics.model_dump() if r.metrics else {}
        rows.append(
            [r.run_id, r.index, r.status.value]
            + [hp.get(c) for c in SWEEP_CSV_COLUMNS[3:10]]
            + [metrics.get(c, "") for c in _METRIC_COLUMNS]
        )
    return rows


def records_from_csv(rows: Sequence[Dict[str, str]]) -> List[SweepRecord]:
    """Rebuild records from sweep.csv rows (metrics other than the tabulated ones are zero)."""
    records = []
    for row in rows:
        status = RunStatus(row["status"])
        metrics = None
        if status == RunStatus.COMPLETED:
            metrics = {c: float(row[c]) for c in _METRIC_COLUMNS}
        hp = {c: row[c] for c in SWEEP_CSV_COLUMNS[3:10] if row.get(c) not in (None, "")}
        records.append(SweepRecord.model_validate({
            "run_id": row["run_id"], "index": int(row["index"]), "status": status,
            "hyperparameters": hp, "metrics": metrics,
        }))
    return records


def load_sweep_records(path: Path) -> List[SweepRecord]:
    """Records from a journal (.jsonl) or a sweep table (.csv).

    Raises:
        ConfigurationError: If the file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Sweep results not found: {path}", {"path": str(path)})
    if path.suffix == ".csv":
        return records_from_csv(read_csv(path))
    return RunJournal(path).latest()
