"""
Postprocessing of circuit outputs into class decisions.

M1 reads qubit 0, M2 takes a Hamming-weight majority over all qubits,
M3 repeats single shots until one falls into an acceptance region.
Every drawn shot is one execution and is recorded on the run's counter.
"""

from typing import List, Optional, Union

import numpy as np

from ...qsim.entities.states import MixedState, PureState
from ...qsim.services.simulator import expvals_z, hamming_weights, probabilities
from ...shared.errors import ValidationError
from ..entities.decision import (
    DecisionLabel,
    DecisionOutcome,
    Estimator,
    FallbackPolicy,
    HammingProjector,
    Prediction,
    ThresholdPolicy,
)
from .execution_counter import ExecutionCounter


class CircuitRun:
    """One simulated circuit output, ready to be measured any number of times."""

    def __init__(self, state: Union[PureState, MixedState], counter: Optional[ExecutionCounter] = None):
        self.n_qubits = state.n_qubits
        self.probabilities = probabilities(state)
        self.expvals = expvals_z(state)
        self.weights = hamming_weights(state.n_qubits)
        self.counter = counter if counter is not None else ExecutionCounter()
        cdf = np.cumsum(self.probabilities)
        cdf /= cdf[-1]
        self._cdf = cdf

    def draw_indices(self, shots: int, rng: np.random.Generator) -> np.ndarray:
        """Draw and record ``shots`` executions."""
        indices = rng.choice(self.probabilities.size, size=shots, p=self.probabilities)
        self.counter.record(shots)
        return indices

    def draw_one(self, rng: np.random.Generator) -> int:
        """One uncounted shot; consumes exactly one uniform from ``rng``."""
        index = int(np.searchsorted(self._cdf, rng.random(), side="right"))
        return min(index, self._cdf.size - 1)


def _check_shots(shots: int) -> None:
    if shots < 1:
        raise ValidationError(f"Shot count must be >= 1, got {shots}")


def _label(probability: float) -> DecisionLabel:
    # ties go to class 1
    return DecisionLabel.CLASS1 if probability >= 0.5 else DecisionLabel.CLASS0


def classify_m1(
    run: CircuitRun,
    shots: int,
    rng: np.random.Generator,
    estimator: Estimator = Estimator.SAMPLED,
) -> Prediction:
    """Class-1 probability from qubit 0 alone: p = (1 - <Z_0>) / 2."""
    _check_shots(shots)
    if estimator is Estimator.ANALYTIC:
        run.counter.record(shots)
        probability = (1.0 - float(run.expvals[0])) / 2.0
    else:
        indices = run.draw_indices(shots, rng)
        first_bits = (indices >> (run.n_qubits - 1)) & 1
        probability = float(first_bits.mean())
    return Prediction(_label(probability), probability, shots)


def classify_m2(
    run: CircuitRun,
    shots: int,
    rng: np.random.Generator,
    estimator: Estimator = Estimator.SAMPLED,
) -> Prediction:
    """
    Majority vote over all qubits.

    A shot votes class 0 iff fewer than half its bits are 1; the analytic
    estimate uses p = (1 - s) / 2 with s the mean of the <Z_i>.
    """
    _check_shots(shots)
    if estimator is Estimator.ANALYTIC:
        run.counter.record(shots)
        probability = (1.0 - float(run.expvals.mean())) / 2.0
    else:
        indices = run.draw_indices(shots, rng)
        votes = 2 * run.weights[indices] >= run.n_qubits
        probability = float(votes.mean())
    return Prediction(_label(probability), probability, shots)


def classify_m3(
    run: CircuitRun,
    policy: ThresholdPolicy,
    rng: np.random.Generator,
) -> DecisionOutcome:
    """
    Draw single shots until one is accepted or ``policy.t_c`` attempts are spent.

    Each attempt consumes one uniform from ``rng``, so a shared generator
    advances by exactly the number of executions recorded.
    """
    n = run.n_qubits
    policy.validate_for(n)

    accept_mask = (run.weights <= n - policy.l) | (run.weights >= policy.l)
    if policy.t_c is None and run.probabilities[accept_mask].sum() <= 0.0:
        raise ValidationError("Acceptance probability is zero; an unbounded retry loop would never stop")

    attempts: List[int] = []
    limit = policy.t_c
    while limit is None or len(attempts) < limit:
        weight = int(run.weights[run.draw_one(rng)])
        attempts.append(weight)
        label = policy.label_for_weight(weight, n)
        if label is not DecisionLabel.REJECT:
            run.counter.record(len(attempts))
            return DecisionOutcome(label, len(attempts), True, tuple(attempts))

    run.counter.record(len(attempts))
    return DecisionOutcome(DecisionLabel.REJECT, len(attempts), False, tuple(attempts))


def classify_spin_vector(z: np.ndarray, l: int) -> DecisionLabel:
    """
    Expectation-value form of the M3 rule for one shot of +-1 outcomes:
    accept iff |sum z| >= 2l - N, class 0 for a positive sum.
    """
    z = np.asarray(z)
    total = int(z.sum())
    if abs(total) < 2 * l - z.size:
        return DecisionLabel.REJECT
    return DecisionLabel.CLASS0 if total > 0 else DecisionLabel.CLASS1


def reject_fallback(outcome: DecisionOutcome, fallback: FallbackPolicy, n_qubits: int) -> DecisionLabel:
    """Final label for a rejected M3 decision."""
    if outcome.label is not DecisionLabel.REJECT:
        raise ValidationError(f"Fallback only applies to rejected outcomes, got {outcome.label.name}")
    if not outcome.attempt_weights:
        raise ValidationError("Rejected outcome has no recorded attempts")

    if fallback is FallbackPolicy.FIXED_CLASS0:
        return DecisionLabel.CLASS0

    weights = np.asarray(outcome.attempt_weights)
    class0_votes = int(np.sum(2 * weights < n_qubits))
    class1_votes = weights.size - class0_votes
    return DecisionLabel.CLASS0 if class0_votes > class1_votes else DecisionLabel.CLASS1


def projector_trace(n_qubits: int, r: int) -> int:
    """Exact tr(Pi_r) = sum_{j=0}^{N-r} C(N, j)."""
    return HammingProjector(n_qubits, r).trace
