from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...shared.errors import ValidationError


@dataclass(frozen=True)
class CircuitSpec:
    """Shape of the classifier circuit: k qubits, l_fm feature-map layers, l_a ansatz layers."""
    k: int
    l_fm: int = 1
    l_a: int = 2

    def __post_init__(self):
        """Business rules validation"""
        if self.k < 2:
            raise ValidationError(f"The entangling feature map needs at least 2 qubits, got {self.k}")
        if self.l_fm < 1 or self.l_a < 1:
            raise ValidationError(f"Layer counts must be >= 1, got l_fm={self.l_fm}, l_a={self.l_a}")

    @property
    def weight_shape(self) -> tuple:
        return (self.l_a + 1, self.k)

    def parameter_count(self) -> int:
        return (self.l_a + 1) * self.k

    def feature_map_gate_count(self) -> int:
        # H + P per qubit, 3 gates per adjacent pair
        return self.l_fm * (2 * self.k + 3 * (self.k - 1))

    def ansatz_gate_count(self) -> int:
        # initial RY column, then re-upload RY + CNOT chain + weight RY per layer
        return self.k + self.l_a * (3 * self.k - 1)

    def gate_count(self) -> int:
        return self.feature_map_gate_count() + self.ansatz_gate_count()


@dataclass(frozen=True, eq=False)
class DataPoint:
    """One preprocessed sample, one feature per qubit."""
    features: np.ndarray
    label: Optional[int] = None

    def __post_init__(self):
        """Business rules validation"""
        if self.features.ndim != 1:
            raise ValidationError(f"Features must be a vector, got shape {self.features.shape}")
        if self.label is not None and self.label not in (0, 1):
            raise ValidationError(f"Label must be 0 or 1, got {self.label}")

    @property
    def k(self) -> int:
        return self.features.size

    def check_width(self, spec: CircuitSpec) -> None:
        if self.k != spec.k:
            raise ValidationError(f"Data point has {self.k} features but the circuit has {spec.k} qubits")


@dataclass(frozen=True, eq=False)
class AnsatzWeights:
    """
    Trainable rotation angles, shape (l_a + 1, k).

    Row 0 is the initial rotation column; row l is ansatz layer l.
    """
    theta: np.ndarray

    def __post_init__(self):
        """Business rules validation"""
        if self.theta.ndim != 2:
            raise ValidationError(f"Weights must be a matrix, got shape {self.theta.shape}")
        if not np.all(np.isfinite(self.theta)):
            raise ValidationError("Weights contain non-finite entries")

    @classmethod
    def random(cls, spec: CircuitSpec, rng: np.random.Generator) -> "AnsatzWeights":
        """Uniform initialization on [0, pi)."""
        return cls(rng.uniform(0.0, np.pi, size=spec.weight_shape))

    @classmethod
    def zeros(cls, spec: CircuitSpec) -> "AnsatzWeights":
        return cls(np.zeros(spec.weight_shape))

    def check_shape(self, spec: CircuitSpec) -> None:
        if self.theta.shape != spec.weight_shape:
            raise ValidationError(
                f"Weights have shape {self.theta.shape}, expected {spec.weight_shape} "
                f"for k={spec.k}, l_a={spec.l_a}"
            )


@dataclass(frozen=True, eq=False)
class Observable:
    """Weighted sum of single-qubit Z operators: sum_q c_q Z_q."""
    coefficients: np.ndarray

    @classmethod
    def z(cls, qubit: int, k: int) -> "Observable":
        if not 0 <= qubit < k:
            raise ValidationError(f"Qubit index {qubit} out of range for {k} qubits")
        c = np.zeros(k)
        c[qubit] = 1.0
        return cls(c)

    @classmethod
    def z_sum(cls, k: int) -> "Observable":
        return cls(np.ones(k))

    @classmethod
    def z_mean(cls, k: int) -> "Observable":
        return cls(np.full(k, 1.0 / k))

    def value(self, z_expectations: np.ndarray) -> float:
        if z_expectations.shape != self.coefficients.shape:
            raise ValidationError(
                f"Observable on {self.coefficients.size} qubits applied to {z_expectations.size} expectations"
            )
        return float(self.coefficients @ z_expectations)
