"""Binary cross-entropy and the maps from circuit outputs to class-1 probabilities."""

import numpy as np

from ...decision.entities.decision import DecisionLabel, DecisionOutcome, ThresholdPolicy

CLIP = 1e-7


def clip_probability(p):
    return np.clip(p, CLIP, 1.0 - CLIP)


def bce_cost(p, y):
    """-[y ln p + (1 - y) ln(1 - p)] with p clipped to [1e-7, 1 - 1e-7]."""
    p = clip_probability(np.asarray(p, dtype=float))
    y = np.asarray(y, dtype=float)
    cost = -(y * np.log(p) + (1.0 - y) * np.log1p(-p))
    return float(cost) if cost.ndim == 0 else cost


def bce_gradient(p, y):
    """dC/dp, evaluated at the clipped probability."""
    p = clip_probability(np.asarray(p, dtype=float))
    y = np.asarray(y, dtype=float)
    grad = (p - y) / (p * (1.0 - p))
    return float(grad) if grad.ndim == 0 else grad


def probability_from_expectation(value):
    """Class-1 probability (1 - <O>) / 2 of an observable with spectrum in [-1, 1]."""
    return (1.0 - np.asarray(value, dtype=float)) / 2.0


def outcome_probability(outcome: DecisionOutcome) -> float:
    """Pseudo-probability of a sampled M3 outcome; a rejection carries no information."""
    if outcome.label is DecisionLabel.CLASS1:
        return 1.0 - CLIP
    if outcome.label is DecisionLabel.CLASS0:
        return CLIP
    return 0.5


def outcome_distribution(probabilities: np.ndarray, weights: np.ndarray, policy: ThresholdPolicy) -> tuple:
    """
    Exact (P(class 0), P(class 1), P(reject)) of the retry loop given the
    per-shot distribution over bitstrings and their Hamming weights.
    """
    n_qubits = int(np.log2(probabilities.size))
    policy.validate_for(n_qubits)
    a0 = float(probabilities[weights <= n_qubits - policy.l].sum())
    a1 = float(probabilities[weights >= policy.l].sum())
    accept = a0 + a1
    if accept <= 0.0:
        return 0.0, 0.0, 1.0
    reject = 0.0 if policy.t_c is None else (1.0 - accept) ** policy.t_c
    return a0 / accept * (1.0 - reject), a1 / accept * (1.0 - reject), reject


def expected_outcome_cost(probabilities: np.ndarray, weights: np.ndarray, policy: ThresholdPolicy, y: int) -> float:
    """Mean of the sampled M3 loss over the exact outcome distribution."""
    p0, p1, reject = outcome_distribution(probabilities, weights, policy)
    return p0 * bce_cost(CLIP, y) + p1 * bce_cost(1.0 - CLIP, y) + reject * bce_cost(0.5, y)
