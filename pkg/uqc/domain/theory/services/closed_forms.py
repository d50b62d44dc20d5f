"""
Closed-form success probabilities and shot counts.

Terms of order eps^2 are not computed; the first-order expressions are
validity bands around the exact noisy values.
"""

import math
from typing import Tuple

from scipy.special import ndtr

from ...decision.services.classifiers import projector_trace
from ...shared.errors import ValidationError
from ..entities.theory_point import check_odd, check_probability


def p_succ_oneshot(delta: float) -> float:
    check_probability("delta", delta)
    return (1.0 + delta) / 2.0


def p_succ_noisy_first_qubit(delta: float, eps: float) -> float:
    """(1 + delta)/2 - delta*eps/2, exact for mixing depolarization."""
    check_probability("delta", delta)
    check_probability("eps", eps)
    return (1.0 + delta) / 2.0 - delta * eps / 2.0


def exact_noise_coefficient(n_qubits: int) -> float:
    """C(N, k)(k + 1)/2^N, the first-order loss coefficient of the average-case state."""
    k = check_odd(n_qubits)
    return math.comb(n_qubits, k) * (k + 1) / 2 ** n_qubits


def p_succ_avg_noisy(n_qubits: int, delta: float, eps: float) -> float:
    """First-order expansion (1+delta)/2 - coefficient * delta * eps."""
    check_probability("delta", delta)
    check_probability("eps", eps)
    return (1.0 + delta) / 2.0 - exact_noise_coefficient(n_qubits) * delta * eps


def stirling_coefficient(k: int) -> float:
    """Large-k approximation sqrt(k/pi) of the exact noise coefficient."""
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    return math.sqrt(k / math.pi)


def stirling_relative_error(k: int) -> float:
    exact = exact_noise_coefficient(2 * k + 1)
    return abs(exact - stirling_coefficient(k)) / exact


def p_lifted(delta: float, eps: float) -> float:
    """Success probability of the lifted state, (1+delta)/2 up to O(eps^2)."""
    check_probability("eps", eps)
    return p_succ_oneshot(delta)


def p_multishot(p: float, shots: int) -> float:
    """Normal approximation Phi(sqrt(T)(p - 1/2)/sqrt(p(1-p))) of a T-shot majority vote."""
    check_probability("p", p)
    if shots < 1:
        raise ValidationError(f"Shot count must be >= 1, got {shots}")
    if p == 0.0 or p == 1.0:
        return p
    z = math.sqrt(shots) * (p - 0.5) / math.sqrt(p * (1.0 - p))
    return float(ndtr(z))


def _check_threshold(n_qubits: int, l: int) -> int:
    k = check_odd(n_qubits)
    if not k + 1 <= l <= n_qubits:
        raise ValidationError(f"Threshold l={l} outside [{k + 1}, {n_qubits}]")
    return k


def unambiguous_probs(n_qubits: int, delta: float, l: int) -> Tuple[float, float]:
    """Zeroth-order per-shot probabilities (p0, p1) of accepting class 0 and class 1."""
    _check_threshold(n_qubits, l)
    check_probability("delta", delta)
    accepted = projector_trace(n_qubits, l) / 2 ** n_qubits
    return (1.0 + delta) * accepted, (1.0 - delta) * accepted


def p_unambiguous(p0: float, p1: float) -> float:
    """Success probability conditioned on acceptance, p0/(p0 + p1)."""
    if p0 < 0.0 or p1 < 0.0:
        raise ValidationError(f"Probabilities must be non-negative, got ({p0}, {p1})")
    if p0 + p1 == 0.0:
        raise ValidationError("Degenerate policy: nothing is ever accepted")
    return p0 / (p0 + p1)


def expected_shots(n_qubits: int, l: int) -> float:
    """2^(N-1) / tr(Pi_l), the mean number of attempts until acceptance."""
    _check_threshold(n_qubits, l)
    return 2 ** (n_qubits - 1) / projector_trace(n_qubits, l)
