"""
Simulator-backed oracles for the closed forms.

Density-matrix oracles evaluate the exact noisy success probability;
Monte Carlo oracles sample the decision rules and report standard errors.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ...decision.entities.decision import DecisionLabel, HammingProjector, ThresholdPolicy
from ...decision.services.classifiers import CircuitRun, classify_m3
from ...decision.services.execution_counter import ExecutionCounter
from ...noise.services.kraus_channels import global_depolarize
from ...qsim.entities.states import MixedState, PureState
from ...qsim.services.simulator import hamming_weights, probabilities
from ...shared.errors import ValidationError
from ..entities.theory_point import (
    AverageCaseState,
    LiftedState,
    MonteCarloEstimate,
    check_odd,
    check_probability,
)


logger = logging.getLogger(__name__)

# dense 2^N x 2^N density matrices
MAX_ORACLE_QUBITS = 11


def _check_size(n_qubits: int) -> None:
    if n_qubits > MAX_ORACLE_QUBITS:
        raise ValidationError(f"Density-matrix oracles support at most {MAX_ORACLE_QUBITS} qubits, got {n_qubits}")


def first_qubit_biased_state(delta: float, n_qubits: int, rng: np.random.Generator) -> MixedState:
    """
    Random pure state whose first qubit reads 0 with probability (1+delta)/2.

    The remaining qubits carry random complex amplitudes in both branches,
    so the state is generally entangled.
    """
    check_probability("delta", delta)
    if n_qubits < 1:
        raise ValidationError(f"Need at least one qubit, got {n_qubits}")
    half = 2 ** (n_qubits - 1)
    branches = []
    for weight in ((1.0 + delta) / 2.0, (1.0 - delta) / 2.0):
        branch = rng.normal(size=half) + 1j * rng.normal(size=half)
        branches.append(np.sqrt(weight) * branch / np.linalg.norm(branch))
    return PureState(n_qubits, np.concatenate(branches)).to_mixed()


def first_qubit_oracle(sigma: MixedState, eps: float) -> float:
    """Probability that qubit 0 reads 0 after eps-depolarizing every qubit."""
    _check_size(sigma.n_qubits)
    noisy = global_depolarize(sigma, eps)
    p = probabilities(noisy)
    return float(p[: p.size // 2].sum())


def success_probability(state: MixedState, eps: float) -> float:
    """tr(E^N(state) Pi_{k+1}): mass on bitstrings of weight <= k after noise."""
    _check_size(state.n_qubits)
    k = check_odd(state.n_qubits)
    noisy = global_depolarize(state, eps)
    projector = HammingProjector(state.n_qubits, k + 1)
    return float(probabilities(noisy) @ projector.diagonal(hamming_weights(state.n_qubits)))


def average_case_oracle(n_qubits: int, delta: float, eps: float) -> float:
    _check_size(n_qubits)
    return success_probability(AverageCaseState(n_qubits, delta).to_mixed_state(), eps)


def lifted_oracle(n_qubits: int, delta: float, eps: float) -> float:
    _check_size(n_qubits)
    return success_probability(LiftedState(n_qubits, delta).to_mixed_state(), eps)


def noise_slope(n_qubits: int, delta: float, eps_pair: Tuple[float, float] = (0.001, 0.002)) -> float:
    """Finite-difference slope in eps of the average-case success probability."""
    low, high = eps_pair
    if not high > low:
        raise ValidationError(f"Need increasing eps pair, got {eps_pair}")
    return (average_case_oracle(n_qubits, delta, high) - average_case_oracle(n_qubits, delta, low)) / (high - low)


def mc_unambiguous(
    n_qubits: int,
    delta: float,
    l: int,
    eps: float,
    trials: int,
    rng: np.random.Generator,
    counter: Optional[ExecutionCounter] = None,
) -> MonteCarloEstimate:
    """
    Run the unbounded unambiguous loop on the (noisy) average-case state.

    Class 0 is the correct label; p_unambiguous is the fraction of
    accepted decisions that are class 0.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    k = check_odd(n_qubits)
    if not k + 1 <= l <= n_qubits:
        raise ValidationError(f"Threshold l={l} outside [{k + 1}, {n_qubits}]")
    _check_size(n_qubits)

    state = global_depolarize(AverageCaseState(n_qubits, delta).to_mixed_state(), eps)
    run = CircuitRun(state, counter)
    policy = ThresholdPolicy(l=l, t_c=None)

    correct = np.empty(trials, dtype=float)
    shots = np.empty(trials, dtype=float)
    for trial in range(trials):
        outcome = classify_m3(run, policy, rng)
        correct[trial] = outcome.label is DecisionLabel.CLASS0
        shots[trial] = outcome.shots_used

    p_u = float(correct.mean())
    estimate = MonteCarloEstimate(
        trials=trials,
        p_unambiguous=p_u,
        p_unambiguous_se=float(np.sqrt(p_u * (1.0 - p_u) / trials)),
        mean_shots=float(shots.mean()),
        mean_shots_se=float(shots.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0,
        accepted=trials,
    )
    logger.debug(f"mc_unambiguous N={n_qubits} l={l} delta={delta} eps={eps}: {estimate}")
    return estimate


def mc_majority_vote(p: float, shots: int, trials: int, rng: np.random.Generator) -> Tuple[float, float]:
    """
    Fraction of trials in which more than half of ``shots`` independent
    draws are correct, with its standard error.
    """
    check_probability("p", p)
    if shots < 1 or trials < 1:
        raise ValidationError(f"shots and trials must be >= 1, got {shots}, {trials}")
    wins = rng.binomial(shots, p, size=trials) * 2 > shots
    estimate = float(wins.mean())
    return estimate, float(np.sqrt(estimate * (1.0 - estimate) / trials))
