"""Robust training of a smoothed circuit classifier with sNES."""

import logging
from typing import Sequence, Tuple

import numpy as np

from .config import get_settings
from .constants import PLAIN_MODEL_SIGMA
from .exceptions import DimensionMismatchError, InvalidConfigurationError
from .models.certification import SmoothedModel
from .models.circuit import ClassReadout, ParamCircuit
from .models.cluster import Sample
from .models.training import IterationRecord, SnesConfig, TrainHistory
from .rng import RandomStreams
from .snes import fitness_margins, snes_step
from .statevector import classifier_eval_batch

logger = logging.getLogger(__name__)


def plain_baseline_config(config: SnesConfig) -> SnesConfig:
    """Baseline variant: same loop without variance regularization.

    Sigma is not frozen at PLAIN_MODEL_SIGMA while the baseline trains. It
    starts at sigma0 and adapts through the eta_sigma update like any other
    run, because sNES mean steps scale with sigma and a 1e-6 search
    distribution would leave theta where it started. Only the deployed model
    has its sigma replaced by PLAIN_MODEL_SIGMA (see as_plain_model).
    """
    return config.model_copy(update={"eta_r": 0.0})


def as_plain_model(model: SmoothedModel) -> SmoothedModel:
    """Deploy a baseline with its sigma replaced by a negligible constant."""
    return SmoothedModel(theta=model.theta, sigma=np.full(model.dimension, PLAIN_MODEL_SIGMA))


class _BatchFitness:
    """Mean clamped margin of every candidate over one minibatch."""

    def __init__(self, circuit: ParamCircuit, readout: ClassReadout, states: np.ndarray,
                 labels: np.ndarray, clamp: float, chunk: int):
        self.circuit = circuit
        self.readout = readout
        self.states = states
        self.labels = labels
        self.clamp = clamp
        self.chunk = chunk
        self.last = np.zeros(0)

    def __call__(self, candidates: np.ndarray) -> np.ndarray:
        lam = candidates.shape[0]
        batch = self.states.shape[0]
        thetas = np.repeat(candidates, batch, axis=0)
        states = np.tile(self.states, (lam, 1))
        labels = np.tile(self.labels, lam)
        probs = classifier_eval_batch(self.circuit, self.readout, states, thetas, chunk=self.chunk)
        self.last = fitness_margins(probs, labels, self.clamp).reshape(lam, batch).mean(axis=1)
        return self.last


def _plain_accuracy(circuit: ParamCircuit, readout: ClassReadout, theta: np.ndarray,
                    states: np.ndarray, labels: np.ndarray, chunk: int) -> float:
    thetas = np.broadcast_to(theta, (states.shape[0], theta.shape[0]))
    probs = classifier_eval_batch(circuit, readout, states, thetas, chunk=chunk)
    return float(np.mean(np.argmax(probs, axis=1) == labels))


def train(circuit: ParamCircuit, readout: ClassReadout, dataset: Sequence[Sample],
          config: SnesConfig) -> Tuple[SmoothedModel, TrainHistory]:
    """Run config.iterations sNES steps over seeded minibatches.

    Args:
        circuit: Classifier circuit with D parameters
        readout: Class readout
        dataset: Labelled training samples
        config: Hyperparameters and seed

    Returns:
        (final smoothed model, history)

    Raises:
        InvalidConfigurationError: If the dataset is empty
        DimensionMismatchError: If the frozen mask does not match D
    """
    if not dataset:
        raise InvalidConfigurationError("dataset", 0, "training needs at least one sample")
    dim = circuit.param_count
    if config.frozen_mask is not None and len(config.frozen_mask) != dim:
        raise DimensionMismatchError("frozen_mask", dim, len(config.frozen_mask))

    streams = RandomStreams(config.seed)
    theta = streams.stream("init").uniform(-config.init_range, config.init_range, dim)
    sigma = np.full(dim, config.sigma0)
    states = np.stack([s.state.amplitudes for s in dataset])
    labels = np.array([s.label for s in dataset], dtype=np.int64)
    batch_size = min(config.batch_size, len(dataset))
    chunk = get_settings().simulation_batch
    history = TrainHistory()

    logger.info("Training %d parameters on %d samples: lambda=%d, %d iterations",
                dim, len(dataset), config.population, config.iterations)
    for it in range(config.iterations):
        rows = np.sort(streams.stream("batch", it).choice(len(dataset), size=batch_size, replace=False))
        fitness = _BatchFitness(circuit, readout, states[rows], labels[rows], config.prob_clamp, chunk)
        theta, sigma = snes_step(theta, sigma, config, fitness, streams.stream("snes", it))

        if it % config.history_every == 0 or it == config.iterations - 1:
            finite = fitness.last[np.isfinite(fitness.last)]
            record = IterationRecord(
                iteration=it,
                mean_fitness=float(finite.mean()) if finite.size else float("nan"),
                mean_sigma=float(sigma.mean()),
                acc=_plain_accuracy(circuit, readout, theta, states[rows], labels[rows], chunk),
            )
            history.append(record)
            logger.debug("iter %d: fitness %.4f, sigma %.4e, acc %.3f",
                         it, record.mean_fitness, record.mean_sigma, record.acc)

    return SmoothedModel(theta=theta, sigma=sigma), history
