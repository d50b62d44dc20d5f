from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...qsim.entities.states import MixedState
from ...qsim.services.simulator import hamming_weights
from ...shared.errors import ValidationError


def check_odd(n_qubits: int) -> int:
    """Return k for N = 2k + 1."""
    if n_qubits < 1 or n_qubits % 2 == 0:
        raise ValidationError(f"Closed forms assume an odd qubit count N = 2k + 1, got {n_qubits}")
    return (n_qubits - 1) // 2


def check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class TheoryPoint:
    """One parameter combination (N, l, delta, eps, T) of the analytic model."""
    n_qubits: int
    delta: float
    eps: float = 0.0
    l: Optional[int] = None
    shots: int = 1

    def __post_init__(self):
        """Business rules validation"""
        k = check_odd(self.n_qubits)
        check_probability("delta", self.delta)
        check_probability("eps", self.eps)
        if self.l is not None and not k + 1 <= self.l <= self.n_qubits:
            raise ValidationError(f"Threshold l={self.l} outside [{k + 1}, {self.n_qubits}]")
        if self.shots < 1:
            raise ValidationError(f"Shot count must be >= 1, got {self.shots}")

    @property
    def k(self) -> int:
        return (self.n_qubits - 1) // 2

    @property
    def threshold(self) -> int:
        """Acceptance threshold, defaulting to l = N."""
        return self.l if self.l is not None else self.n_qubits


@dataclass(frozen=True)
class AverageCaseState:
    """
    Diagonal state spreading (1+delta)/2 uniformly over bitstrings of weight
    <= k and (1-delta)/2 uniformly over the rest.
    """
    n_qubits: int
    delta: float

    def __post_init__(self):
        """Business rules validation"""
        check_odd(self.n_qubits)
        check_probability("delta", self.delta)

    def diagonal(self) -> np.ndarray:
        k = (self.n_qubits - 1) // 2
        half = 2 ** (self.n_qubits - 1)
        correct = hamming_weights(self.n_qubits) <= k
        return np.where(correct, (1.0 + self.delta) / 2.0 / half, (1.0 - self.delta) / 2.0 / half)

    def to_mixed_state(self) -> MixedState:
        return MixedState.from_diagonal(self.diagonal())


@dataclass(frozen=True)
class LiftedState:
    """(1+delta)/2 on |0...0> and (1-delta)/2 on |1...1>."""
    n_qubits: int
    delta: float

    def __post_init__(self):
        """Business rules validation"""
        check_odd(self.n_qubits)
        check_probability("delta", self.delta)

    def to_mixed_state(self) -> MixedState:
        diagonal = np.zeros(2 ** self.n_qubits)
        diagonal[0] = (1.0 + self.delta) / 2.0
        diagonal[-1] = (1.0 - self.delta) / 2.0
        return MixedState.from_diagonal(diagonal)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Empirical unambiguous-classifier statistics with standard errors."""
    trials: int
    p_unambiguous: float
    p_unambiguous_se: float
    mean_shots: float
    mean_shots_se: float
    accepted: int
