"""
Dense quantum states.

Bit ordering: basis index ``b`` is read as ``|b_0 b_1 ... b_{n-1}>`` with
qubit 0 as the most-significant bit. Reshaping a state vector to
``(2,) * n`` therefore gives axis ``q`` for qubit ``q``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ...shared.errors import ValidationError

STATE_TOLERANCE = 1e-10
EIGENVALUE_TOLERANCE = 1e-9


def _check_qubits(n_qubits: int) -> None:
    if n_qubits < 1:
        raise ValidationError(f"A state needs at least one qubit, got {n_qubits}")


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector of ``n_qubits`` qubits."""
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        """Business rules validation"""
        _check_qubits(self.n_qubits)
        if self.amplitudes.shape != (2 ** self.n_qubits,):
            raise ValidationError(
                f"Expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got shape {self.amplitudes.shape}"
            )

    @classmethod
    def zero(cls, n_qubits: int) -> "PureState":
        _check_qubits(n_qubits)
        amplitudes = np.zeros(2 ** n_qubits, dtype=complex)
        amplitudes[0] = 1.0
        return cls(n_qubits, amplitudes)

    @classmethod
    def basis(cls, bits: str) -> "PureState":
        """Computational basis state from a bitstring such as ``"101"``."""
        amplitudes = np.zeros(2 ** len(bits), dtype=complex)
        amplitudes[int(bits, 2)] = 1.0
        return cls(len(bits), amplitudes)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def to_mixed(self) -> "MixedState":
        return MixedState(self.n_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))

    def validate(self, tol: float = STATE_TOLERANCE) -> None:
        if abs(self.norm - 1.0) > tol:
            raise ValidationError(f"State norm {self.norm!r} deviates from 1 by more than {tol}")


@dataclass(frozen=True, eq=False)
class MixedState:
    """Density operator of ``n_qubits`` qubits."""
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        """Business rules validation"""
        _check_qubits(self.n_qubits)
        dim = 2 ** self.n_qubits
        if self.matrix.shape != (dim, dim):
            raise ValidationError(
                f"Expected a {dim}x{dim} density matrix for {self.n_qubits} qubits, "
                f"got shape {self.matrix.shape}"
            )

    @classmethod
    def zero(cls, n_qubits: int) -> "MixedState":
        return PureState.zero(n_qubits).to_mixed()

    @classmethod
    def from_diagonal(cls, probabilities: np.ndarray) -> "MixedState":
        probabilities = np.asarray(probabilities, dtype=float)
        n_qubits = int(round(np.log2(probabilities.size)))
        if 2 ** n_qubits != probabilities.size:
            raise ValidationError(f"Diagonal length {probabilities.size} is not a power of two")
        return cls(n_qubits, np.diag(probabilities).astype(complex))

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "MixedState":
        dim = 2 ** n_qubits
        return cls(n_qubits, np.eye(dim, dtype=complex) / dim)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def validate(self, tol: float = STATE_TOLERANCE) -> None:
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > tol:
            raise ValidationError("Density matrix is not Hermitian")
        if abs(self.trace - 1.0) > tol:
            raise ValidationError(f"Density matrix trace {self.trace!r} deviates from 1")
        smallest = float(np.min(np.linalg.eigvalsh(self.matrix)))
        if smallest < -EIGENVALUE_TOLERANCE:
            raise ValidationError(f"Density matrix has negative eigenvalue {smallest!r}")


@dataclass(frozen=True)
class ShotSample:
    """One Z-basis measurement of every qubit."""
    bits: Tuple[int, ...]

    @classmethod
    def from_index(cls, index: int, n_qubits: int) -> "ShotSample":
        return cls(tuple((int(index) >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)))

    @property
    def weight(self) -> int:
        """Hamming distance to the all-zeros string."""
        return sum(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)
