from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Optional, Tuple

import numpy as np

from ...shared.errors import ValidationError


class ModelVariant(Enum):
    """Postprocessing models"""
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"


class DecisionLabel(Enum):
    """Per-shot or per-point decision"""
    CLASS0 = 0
    CLASS1 = 1
    REJECT = "reject"


class Estimator(Enum):
    """How M1/M2 read the circuit output"""
    SAMPLED = "sampled"
    ANALYTIC = "analytic"


class FallbackPolicy(Enum):
    """What a rejected M3 decision falls back to"""
    MAJORITY_OF_ATTEMPTS = "majority_of_attempts"
    FIXED_CLASS0 = "fixed_class0"


@dataclass(frozen=True)
class HammingProjector:
    """Diagonal projector onto bitstrings of Hamming weight <= n_qubits - r."""
    n_qubits: int
    r: int

    def __post_init__(self):
        """Business rules validation"""
        if not 1 <= self.r <= self.n_qubits:
            raise ValidationError(f"Projector threshold r={self.r} outside [1, {self.n_qubits}]")

    @property
    def max_weight(self) -> int:
        return self.n_qubits - self.r

    @property
    def trace(self) -> int:
        return sum(comb(self.n_qubits, j) for j in range(self.max_weight + 1))

    def contains(self, weight: int) -> bool:
        return weight <= self.max_weight

    def diagonal(self, weights: np.ndarray) -> np.ndarray:
        """0/1 diagonal given the Hamming weight of every basis index."""
        return (weights <= self.max_weight).astype(float)


@dataclass(frozen=True)
class ThresholdPolicy:
    """
    Acceptance rule of the unambiguous classifier.

    A shot of weight w is accepted as class 0 when w <= N - l, as class 1
    when w >= l, and rejected otherwise. ``t_c`` caps the attempts;
    ``None`` means retry until accepted.
    """
    l: int
    t_c: Optional[int] = 50
    fallback: FallbackPolicy = FallbackPolicy.MAJORITY_OF_ATTEMPTS

    def __post_init__(self):
        """Business rules validation"""
        if self.t_c is not None and self.t_c < 1:
            raise ValidationError(f"T_c must be >= 1, got {self.t_c}")

    def validate_for(self, n_qubits: int) -> None:
        """Require N - l < l <= N so the two acceptance regions are disjoint."""
        if not (n_qubits - self.l < self.l <= n_qubits):
            lowest = n_qubits // 2 + 1
            raise ValidationError(f"Threshold l={self.l} outside [{lowest}, {n_qubits}] for {n_qubits} qubits")

    def label_for_weight(self, weight: int, n_qubits: int) -> DecisionLabel:
        if weight <= n_qubits - self.l:
            return DecisionLabel.CLASS0
        if weight >= self.l:
            return DecisionLabel.CLASS1
        return DecisionLabel.REJECT


@dataclass(frozen=True)
class Prediction:
    """Many-shot (M1/M2) result for one data point."""
    label: DecisionLabel
    probability: float
    shots_used: int


@dataclass(frozen=True)
class DecisionOutcome:
    """Unambiguous (M3) result for one data point."""
    label: DecisionLabel
    shots_used: int
    accepted: bool
    attempt_weights: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Business rules validation"""
        if self.shots_used < 1:
            raise ValidationError(f"An outcome uses at least one shot, got {self.shots_used}")
        if (self.label is DecisionLabel.REJECT) == self.accepted:
            raise ValidationError(f"Inconsistent outcome: label {self.label.name}, accepted={self.accepted}")
