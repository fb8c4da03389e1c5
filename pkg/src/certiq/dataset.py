"""Labelled ground-state datasets for cluster phase classification."""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import AbstractSet, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from .config import get_settings
from .constants import COUPLING_RANGE, DATASET_FORMAT_VERSION, NORM_TOLERANCE
from .exceptions import DatasetFormatError, DatasetVersionError, InvalidConfigurationError
from .hamiltonian import build_hamiltonian, ground_state
from .models.circuit import Statevector
from .models.cluster import (
    ClusterParams, DatasetHeader, PhaseBoundarySpec, Sample, SampleRecord
)
from .phases import phase_label
from .rng import RandomStreams

logger = logging.getLogger(__name__)

Couplings = Tuple[float, float]


def _draw_couplings(rng: np.random.Generator, count: int,
                    exclude: AbstractSet[Couplings]) -> List[Couplings]:
    low, high = COUPLING_RANGE
    seen = set(exclude)
    pairs: List[Couplings] = []
    while len(pairs) < count:
        j1, j2 = (float(v) for v in rng.uniform(low, high, size=2))
        if (j1, j2) in seen:
            continue
        seen.add((j1, j2))
        pairs.append((j1, j2))
    return pairs


def _solve_sample(index: int, couplings: Couplings, n_qubits: int, streams: RandomStreams,
                  spec: PhaseBoundarySpec, max_qubits: Optional[int]) -> Sample:
    params = ClusterParams(n_qubits=n_qubits, j1=couplings[0], j2=couplings[1])
    h = build_hamiltonian(params, max_qubits=max_qubits)
    energy, state = ground_state(h, seed=streams.stream("lanczos", index))
    return Sample(
        params=params,
        label=phase_label(params.j1, params.j2, spec),
        state=state,
        energy=energy,
    )


def gen_dataset(n_qubits: int, count: int, seed: int, spec: PhaseBoundarySpec, *,
                exclude: AbstractSet[Couplings] = frozenset(),
                threads: Optional[int] = None,
                max_qubits: Optional[int] = None) -> List[Sample]:
    """Draw i.i.d. uniform couplings and solve their ground states.

    Args:
        n_qubits: Chain length
        count: Number of samples
        seed: Base seed; sample i's solver is seeded by (seed, i)
        spec: Phase boundaries used for labels
        exclude: Coupling pairs that must not be drawn (the other split)
        threads: Worker count (Settings.threads by default)
        max_qubits: Memory guard override

    Returns:
        Samples in draw order

    Raises:
        InvalidConfigurationError: If count < 1
        ConvergenceError: Propagated from the ground-state solver
    """
    if count < 1:
        raise InvalidConfigurationError("count", count, "At least one sample is required")
    streams = RandomStreams(seed)
    pairs = _draw_couplings(streams.stream("couplings"), count, exclude)
    workers = threads or get_settings().threads
    logger.info("Solving %d ground states on %d qubits (%d workers)", count, n_qubits, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        samples = list(pool.map(
            lambda item: _solve_sample(item[0], item[1], n_qubits, streams, spec, max_qubits),
            enumerate(pairs),
        ))
    return samples


def gen_split(n_qubits: int, train_count: int, test_count: int, seed: int,
              spec: PhaseBoundarySpec, threads: Optional[int] = None,
              max_qubits: Optional[int] = None) -> Tuple[List[Sample], List[Sample]]:
    """Mutually exclusive train and test sets from disjoint derived seeds."""
    streams = RandomStreams(seed)
    train = gen_dataset(n_qubits, train_count, streams.seed("split", 0), spec,
                        threads=threads, max_qubits=max_qubits)
    taken = {(s.params.j1, s.params.j2) for s in train}
    test = gen_dataset(n_qubits, test_count, streams.seed("split", 1), spec,
                       exclude=taken, threads=threads, max_qubits=max_qubits)
    return train, test


def save_dataset(samples: List[Sample], path: Path, seed: int, spec_hash: str) -> None:
    """Write a JSON-lines dataset: header line, then one record per sample."""
    if not samples:
        raise InvalidConfigurationError("samples", 0, "Cannot save an empty dataset")
    n_qubits = samples[0].params.n_qubits
    header = DatasetHeader(
        version=DATASET_FORMAT_VERSION, n_qubits=n_qubits,
        spec_hash=spec_hash, seed=seed, count=len(samples),
    )
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(header.model_dump_json() + "\n")
        for sample in samples:
            amps = sample.state.amplitudes
            record = SampleRecord(
                j1=sample.params.j1, j2=sample.params.j2, label=sample.label,
                energy=sample.energy,
                amplitudes=[(float(a.real), float(a.imag)) for a in amps],
            )
            f.write(json.dumps(record.model_dump(), separators=(",", ":")) + "\n")
    logger.info("Wrote %d samples to %s", len(samples), path)


def load_dataset(path: Path) -> Tuple[DatasetHeader, List[Sample]]:
    """Read a dataset written by save_dataset.

    Raises:
        DatasetFormatError: On malformed, truncated or inconsistent content
        DatasetVersionError: On an unsupported format version
    """
    path = Path(path)
    if not path.exists():
        raise DatasetFormatError(str(path), None, "file not found")
    with open(path, "r", encoding="utf-8") as f:
        lines = [line for line in f.read().split("\n") if line.strip()]
    if not lines:
        raise DatasetFormatError(str(path), None, "empty file")

    try:
        raw_header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise DatasetFormatError(str(path), None, str(e))
    if raw_header.get("version") != DATASET_FORMAT_VERSION:
        raise DatasetVersionError(raw_header.get("version"), DATASET_FORMAT_VERSION)
    try:
        header = DatasetHeader.model_validate(raw_header)
    except ValidationError as e:
        raise DatasetFormatError(str(path), None, str(e))

    body = lines[1:]
    if len(body) != header.count:
        missing = min(len(body), header.count)
        raise DatasetFormatError(
            str(path), missing,
            f"header declares {header.count} records, found {len(body)}"
        )

    dim = 1 << header.n_qubits
    samples: List[Sample] = []
    for index, line in enumerate(body):
        try:
            record = SampleRecord.model_validate_json(line)
        except ValidationError as e:
            raise DatasetFormatError(str(path), index, str(e).splitlines()[0])
        if len(record.amplitudes) != dim:
            raise DatasetFormatError(
                str(path), index,
                f"expected {dim} amplitudes for {header.n_qubits} qubits, found {len(record.amplitudes)}"
            )
        amps = np.array([complex(re, im) for re, im in record.amplitudes])
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DatasetFormatError(str(path), index, f"amplitudes have norm {norm:.12g}, expected 1")
        samples.append(Sample(
            params=ClusterParams(n_qubits=header.n_qubits, j1=record.j1, j2=record.j2),
            label=record.label,
            state=Statevector(n_qubits=header.n_qubits, amplitudes=amps),
            energy=record.energy,
        ))
    return header, samples
