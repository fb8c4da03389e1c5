"""Randomized smoothing over circuit parameters.

The smoothed classifier predicts the class that wins most often when the
parameters are drawn from N(theta, diag(sigma^2)). Certification estimates
the winning probability with Monte-Carlo shots, bounds it with one-sided
Clopper-Pearson intervals and turns the bounds into a robust scale s_e:
any parameter shift delta with ||delta / sigma||_2 < s_e leaves the
smoothed prediction unchanged.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Sequence

import numpy as np
from scipy import special, stats

from .config import get_settings
from .constants import ABSTAIN, PBoundMode, PredictMode
from .exceptions import InvalidConfigurationError, InvalidCountsError, InvalidProbabilityError
from .models.certification import CertificationResult, CertificationSettings, SmoothedModel
from .models.circuit import ClassReadout, ParamCircuit, Statevector
from .models.cluster import Sample
from .rng import RandomStreams
from .statevector import classifier_eval_batch

logger = logging.getLogger(__name__)


def std_normal_quantile(p: float) -> float:
    """Inverse standard normal CDF.

    Raises:
        InvalidProbabilityError: If p is not strictly between 0 and 1
    """
    if not 0.0 < p < 1.0:
        raise InvalidProbabilityError("p", p)
    return float(special.ndtri(p))


def std_normal_cdf(x: float) -> float:
    return float(special.ndtr(x))


def clamp_probability(p, eps: float):
    """Clip probabilities into [eps, 1 - eps]."""
    return np.clip(p, eps, 1.0 - eps)


def sample_perturbed_params(model: SmoothedModel, stream: np.random.Generator,
                            count: Optional[int] = None) -> np.ndarray:
    """theta + sigma * s with s standard normal; (D,) or (count, D)."""
    shape = (model.dimension,) if count is None else (count, model.dimension)
    return model.theta + model.sigma * stream.standard_normal(shape)


def _perturbed_probabilities(model: SmoothedModel, x_state: Statevector,
                             circuit: ParamCircuit, readout: ClassReadout, shots: int,
                             stream: np.random.Generator) -> Iterator[np.ndarray]:
    """Class probabilities under `shots` parameter draws, yielded in chunks."""
    if model.dimension != circuit.param_count:
        raise InvalidConfigurationError(
            "model", model.dimension, f"circuit expects {circuit.param_count} parameters"
        )
    chunk = get_settings().simulation_batch
    done = 0
    while done < shots:
        size = min(chunk, shots - done)
        thetas = sample_perturbed_params(model, stream, size)
        yield classifier_eval_batch(circuit, readout, x_state.amplitudes, thetas)
        done += size


def mc_top_class_counts(model: SmoothedModel, x_state: Statevector, circuit: ParamCircuit,
                        readout: ClassReadout, shots: int,
                        stream: np.random.Generator) -> np.ndarray:
    """How often each class is the argmax over `shots` perturbed evaluations.

    Raises:
        InvalidConfigurationError: If shots < 1
    """
    if shots < 1:
        raise InvalidConfigurationError("shots", shots, "must be at least 1")
    counts = np.zeros(readout.class_count, dtype=np.int64)
    for probs in _perturbed_probabilities(model, x_state, circuit, readout, shots, stream):
        counts += np.bincount(np.argmax(probs, axis=1), minlength=readout.class_count)
    return counts


def _check_counts(k: int, n: int, alpha: float) -> None:
    if n < 1 or not 0 <= k <= n:
        raise InvalidCountsError(k, n)
    if not 0.0 < alpha < 1.0:
        raise InvalidProbabilityError("alpha", alpha)


def clopper_pearson_lower(k: int, n: int, alpha: float) -> float:
    """One-sided (1 - alpha) Clopper-Pearson lower bound on a binomial proportion."""
    _check_counts(k, n, alpha)
    if k == 0:
        return 0.0
    return float(stats.beta.ppf(alpha, k, n - k + 1))


def clopper_pearson_upper(k: int, n: int, alpha: float) -> float:
    """One-sided (1 - alpha) Clopper-Pearson upper bound on a binomial proportion."""
    _check_counts(k, n, alpha)
    if k == n:
        return 1.0
    return float(stats.beta.ppf(1.0 - alpha, k + 1, n - k))


def certified_radius(pA_lower: float, pB_upper: float) -> float:
    """s_e = max(0, (Phi^-1(pA_lower) - Phi^-1(pB_upper)) / 2).

    Raises:
        InvalidProbabilityError: If either bound is 0 or 1
    """
    gap = std_normal_quantile(pA_lower) - std_normal_quantile(pB_upper)
    return max(0.0, 0.5 * gap)


def _runner_up_bound(counts: np.ndarray, top: int, pA_lower: float, n: int, alpha: float,
                     mode: PBoundMode) -> float:
    if mode == PBoundMode.COMPLEMENT or counts.shape[0] < 2:
        return 1.0 - pA_lower
    corrected = alpha / (counts.shape[0] - 1)
    return max(
        clopper_pearson_upper(int(c), n, corrected)
        for j, c in enumerate(counts) if j != top
    )


def certify(model: SmoothedModel, x_state: Statevector, circuit: ParamCircuit,
            readout: ClassReadout, n0: int, n: int, alpha: float,
            stream: np.random.Generator,
            pb_mode: PBoundMode = PBoundMode.COMPLEMENT) -> CertificationResult:
    """Select the top class with n0 shots, then bound it with n fresh shots.

    Args:
        model: Smoothed parameters
        x_state: Input state
        circuit: Classifier circuit
        readout: Class readout
        n0: Selection shots
        n: Estimation shots
        alpha: Failure probability of the bounds
        stream: Random stream owned by this input
        pb_mode: Runner-up bound (1 - pA_lower, or Bonferroni per-class bounds)

    Returns:
        Certificate, or an abstention when pA_lower <= pB_upper
    """
    if n0 < 1 or n < 1:
        raise InvalidConfigurationError("shots", (n0, n), "n0 and n must be at least 1")
    selection = mc_top_class_counts(model, x_state, circuit, readout, n0, stream)
    top = int(np.argmax(selection))
    counts = mc_top_class_counts(model, x_state, circuit, readout, n, stream)
    pA_lower = clopper_pearson_lower(int(counts[top]), n, alpha)
    pB_upper = _runner_up_bound(counts, top, pA_lower, n, alpha, pb_mode)

    common = dict(
        pA_lower=pA_lower, pB_upper=pB_upper, shots_used=n0 + n, alpha=alpha,
        counts=tuple(int(c) for c in counts),
    )
    if pA_lower <= pB_upper:
        return CertificationResult(predicted_class=ABSTAIN, s_e=0.0, **common)
    s_e = certified_radius(pA_lower, pB_upper)
    if s_e <= 0.0:
        return CertificationResult(predicted_class=ABSTAIN, s_e=0.0, **common)
    return CertificationResult(
        predicted_class=top, s_e=s_e,
        semi_axes=tuple(float(a) for a in s_e * model.sigma), **common,
    )


def certify_dataset(model: SmoothedModel, samples: Sequence[Sample], circuit: ParamCircuit,
                    readout: ClassReadout, settings: CertificationSettings,
                    streams: RandomStreams, threads: Optional[int] = None) -> List[CertificationResult]:
    """Certify every sample with its own stream keyed by the sample index."""

    def run(index: int) -> CertificationResult:
        sample = samples[index]
        result = certify(
            model, sample.state, circuit, readout, settings.n0, settings.n,
            settings.alpha, streams.stream("certify", index), settings.pb_mode,
        )
        return result.model_copy(update={"sample_index": index, "label": sample.label})

    workers = threads or get_settings().threads
    logger.info("Certifying %d samples (n0=%d, n=%d, alpha=%g)",
                len(samples), settings.n0, settings.n, settings.alpha)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run, range(len(samples))))
    abstained = sum(r.abstained for r in results)
    if abstained:
        logger.info("%d of %d samples abstained", abstained, len(results))
    return results


def smoothed_predict(model: SmoothedModel, x_state: Statevector, circuit: ParamCircuit,
                     readout: ClassReadout, M: int, stream: np.random.Generator,
                     mode: PredictMode = PredictMode.COUNT_ARGMAX) -> int:
    """Smoothed prediction from M parameter draws.

    count-argmax returns the most frequent argmax class; mean-prob averages
    the probability vectors first. Ties go to the lowest class index.
    """
    if M < 1:
        raise InvalidConfigurationError("M", M, "must be at least 1")
    if mode == PredictMode.COUNT_ARGMAX:
        return int(np.argmax(mc_top_class_counts(model, x_state, circuit, readout, M, stream)))
    total = np.zeros(readout.class_count)
    for probs in _perturbed_probabilities(model, x_state, circuit, readout, M, stream):
        total += probs.sum(axis=0)
    return int(np.argmax(total / M))


def smoothed_accuracy(model: SmoothedModel, samples: Sequence[Sample], circuit: ParamCircuit,
                      readout: ClassReadout, M: int, streams: RandomStreams,
                      mode: PredictMode = PredictMode.MEAN_PROB) -> float:
    """Fraction of samples whose smoothed prediction matches the label."""
    if not samples:
        return 0.0
    hits = sum(
        smoothed_predict(model, s.state, circuit, readout, M, streams.stream("predict", i), mode)
        == s.label
        for i, s in enumerate(samples)
    )
    return hits / len(samples)


def smoothed_predictions(model: SmoothedModel, states: np.ndarray, circuit: ParamCircuit,
                         readout: ClassReadout, M: int, stream: np.random.Generator,
                         mode: PredictMode = PredictMode.MEAN_PROB) -> np.ndarray:
    """Smoothed predictions for a (P, 2^n) batch of inputs, M draws per input."""
    if M < 1:
        raise InvalidConfigurationError("M", M, "must be at least 1")
    states = np.asarray(states, dtype=np.complex128)
    points = states.shape[0]
    thetas = sample_perturbed_params(model, stream, points * M)
    rows = np.repeat(states, M, axis=0)
    probs = classifier_eval_batch(circuit, readout, rows, thetas, chunk=get_settings().simulation_batch)
    probs = probs.reshape(points, M, readout.class_count)
    if mode == PredictMode.MEAN_PROB:
        return np.argmax(probs.mean(axis=1), axis=1)
    winners = np.argmax(probs, axis=2)
    counts = np.stack([np.bincount(w, minlength=readout.class_count) for w in winners])
    return np.argmax(counts, axis=1)
