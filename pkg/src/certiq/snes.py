"""Separable natural evolution strategies over (theta, sigma).

One step samples lambda standard-normal directions, ranks the candidates
theta + sigma * s by fitness, and moves theta along the utility-weighted
directions while sigma adapts multiplicatively. A variance regularizer is
then added to sigma, which is floored to stay positive.
"""

import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy import special

from .constants import RegularizerKind
from .exceptions import DimensionMismatchError, InvalidConfigurationError
from .models.training import SnesConfig

logger = logging.getLogger(__name__)

Evaluate = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def _utilities(lam: int) -> Tuple[float, ...]:
    ranks = np.arange(1, lam + 1)
    raw = np.maximum(0.0, np.log(lam / 2.0 + 1.0) - np.log(ranks))
    return tuple(raw / raw.sum() - 1.0 / lam)


def rank_utilities(lam: int) -> np.ndarray:
    """Fitness-shaping utilities for ranks 1..lam (rank 1 is the best); they sum to zero."""
    if lam < 2:
        raise InvalidConfigurationError("population", lam, "sNES needs at least 2 candidates")
    return np.array(_utilities(lam))


def fitness_margins(probs: np.ndarray, labels: np.ndarray, clamp: float) -> np.ndarray:
    """Row-wise (Phi^-1(p_A) - Phi^-1(p_B)) / 2 with p_A the label's probability."""
    probs = np.asarray(probs, dtype=np.float64)
    rows = np.arange(probs.shape[0])
    labels = np.asarray(labels, dtype=np.int64)
    p_a = probs[rows, labels]
    others = probs.copy()
    others[rows, labels] = -np.inf
    p_b = others.max(axis=1)
    p_a = np.clip(p_a, clamp, 1.0 - clamp)
    p_b = np.clip(p_b, clamp, 1.0 - clamp)
    return 0.5 * (special.ndtri(p_a) - special.ndtri(p_b))


def fitness_margin(class_probs: np.ndarray, label: int, clamp: float) -> float:
    """Certification margin of one probability vector; negative when misclassified."""
    probs = np.asarray(class_probs, dtype=np.float64).reshape(1, -1)
    return float(fitness_margins(probs, np.array([label]), clamp)[0])


def regularize_sigma(sigma: np.ndarray, kind: RegularizerKind, eta_r: float) -> np.ndarray:
    """sigma + eta_r * sigma (L2) or sigma + eta_r / sigma (AREA)."""
    sigma = np.asarray(sigma, dtype=np.float64)
    if kind == RegularizerKind.L2:
        return sigma + eta_r * sigma
    return sigma + eta_r / sigma


def snes_step(theta: np.ndarray, sigma: np.ndarray, config: SnesConfig,
              evaluate: Evaluate, stream: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """One sNES update.

    Args:
        theta: Current mean, shape (D,)
        sigma: Current standard deviations, shape (D,)
        config: Rates, population and regularizer
        evaluate: Maps a (lambda, D) candidate matrix to lambda fitness values
        stream: Random stream for this iteration

    Returns:
        (theta', sigma')
    """
    theta = np.asarray(theta, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    dim = theta.shape[0]
    if sigma.shape != theta.shape:
        raise DimensionMismatchError("sigma", dim, sigma.shape[0])

    lam = config.population
    noise = stream.standard_normal((lam, dim))
    candidates = theta + sigma * noise
    fitness = np.asarray(evaluate(candidates), dtype=np.float64).reshape(-1)
    if fitness.shape[0] != lam:
        raise DimensionMismatchError("fitness", lam, fitness.shape[0])

    finite = np.isfinite(fitness)
    if not finite.all():
        logger.warning("%d of %d candidates had non-finite fitness; ranked last",
                       int((~finite).sum()), lam)
        fitness = np.where(finite, fitness, -np.inf)

    order = np.argsort(-fitness, kind="stable")
    utilities = rank_utilities(lam)
    ranked = noise[order]
    grad_theta = utilities @ ranked
    grad_sigma = utilities @ (ranked ** 2 - 1.0)

    step = config.eta_theta * sigma * grad_theta
    if config.frozen_mask is not None:
        mask = np.asarray(config.frozen_mask, dtype=bool)
        if mask.shape[0] != dim:
            raise DimensionMismatchError("frozen_mask", dim, mask.shape[0])
        step[mask] = 0.0
    new_theta = theta + step
    new_sigma = sigma * np.exp(0.5 * config.eta_sigma * grad_sigma)
    new_sigma = regularize_sigma(new_sigma, config.reg_kind, config.eta_r)
    new_sigma = np.maximum(new_sigma, config.sigma_floor)
    return new_theta, new_sigma
