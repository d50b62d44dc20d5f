from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Tuple

import numpy as np

from ...shared.errors import ValidationError

KRAUS_TOLERANCE = 1e-12

_I = np.eye(2, dtype=complex)
_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class ChannelKind(Enum):
    """Single-qubit noise channels"""
    DEPOLARIZING_PAULI = "depolarizing_pauli"
    DEPOLARIZING_MIXING = "depolarizing_mixing"
    AMPLITUDE_DAMPING = "amplitude_damping"
    PHASE_DAMPING = "phase_damping"

    @property
    def stage(self) -> int:
        """Position in the depolarizing -> amplitude -> phase sequence."""
        return {
            ChannelKind.DEPOLARIZING_PAULI: 0,
            ChannelKind.DEPOLARIZING_MIXING: 0,
            ChannelKind.AMPLITUDE_DAMPING: 1,
            ChannelKind.PHASE_DAMPING: 2,
        }[self]


@dataclass(frozen=True)
class Channel:
    """
    Single-qubit Kraus channel.

    Depolarizing comes in two parameterizations:

    - ``DEPOLARIZING_PAULI(p)``: (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z)
    - ``DEPOLARIZING_MIXING(eps)``: (1-eps) rho + eps I/2

    They coincide for eps = 4p/3.
    """
    kind: ChannelKind
    parameter: float

    def __post_init__(self):
        """Business rules validation"""
        if not 0.0 <= self.parameter <= 1.0:
            raise ValidationError(
                f"{self.kind.value} parameter must be a probability in [0, 1], got {self.parameter}"
            )

    @classmethod
    def depolarizing_pauli(cls, p: float) -> "Channel":
        return cls(ChannelKind.DEPOLARIZING_PAULI, float(p))

    @classmethod
    def depolarizing_mixing(cls, eps: float) -> "Channel":
        return cls(ChannelKind.DEPOLARIZING_MIXING, float(eps))

    @classmethod
    def amplitude_damping(cls, gamma: float) -> "Channel":
        return cls(ChannelKind.AMPLITUDE_DAMPING, float(gamma))

    @classmethod
    def phase_damping(cls, gamma: float) -> "Channel":
        return cls(ChannelKind.PHASE_DAMPING, float(gamma))

    def kraus_operators(self) -> List[np.ndarray]:
        x = self.parameter
        if self.kind is ChannelKind.DEPOLARIZING_PAULI:
            return [np.sqrt(1.0 - x) * _I] + [np.sqrt(x / 3.0) * P for P in (_X, _Y, _Z)]
        if self.kind is ChannelKind.DEPOLARIZING_MIXING:
            return [np.sqrt(1.0 - 3.0 * x / 4.0) * _I] + [np.sqrt(x / 4.0) * P for P in (_X, _Y, _Z)]
        if self.kind is ChannelKind.AMPLITUDE_DAMPING:
            return [
                np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - x)]], dtype=complex),
                np.array([[0.0, np.sqrt(x)], [0.0, 0.0]], dtype=complex),
            ]
        return [
            np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - x)]], dtype=complex),
            np.array([[0.0, 0.0], [0.0, np.sqrt(x)]], dtype=complex),
        ]

    def is_complete(self, tol: float = KRAUS_TOLERANCE) -> bool:
        """Check sum_i K_i^dagger K_i = I."""
        total = sum(k.conj().T @ k for k in self.kraus_operators())
        return bool(np.max(np.abs(total - _I)) <= tol)


@dataclass(frozen=True)
class ChannelOp:
    """A channel applied to one qubit inside a circuit."""
    channel: Channel
    qubit: int


@dataclass(frozen=True)
class NoiseSpec:
    """Channels applied, in order, to every qubit an operation touches."""
    channels: Tuple[Channel, ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Business rules validation"""
        stages = [c.kind.stage for c in self.channels]
        if stages != sorted(stages):
            raise ValidationError(
                "Noise channels must follow the order depolarizing -> amplitude damping -> phase damping, "
                f"got {[c.kind.value for c in self.channels]}"
            )

    @classmethod
    def default(cls) -> "NoiseSpec":
        return cls((
            Channel.depolarizing_pauli(0.02),
            Channel.amplitude_damping(0.05),
            Channel.phase_damping(0.03),
        ))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, float]]) -> "NoiseSpec":
        """Build from ``(kind, parameter)`` pairs as stored in config files."""
        try:
            return cls(tuple(Channel(ChannelKind(kind), float(p)) for kind, p in pairs))
        except ValueError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"Unknown noise channel: {e}") from e

    def scaled(self, factor: float) -> "NoiseSpec":
        return NoiseSpec(tuple(Channel(c.kind, c.parameter * factor) for c in self.channels))

    def to_pairs(self) -> List[Tuple[str, float]]:
        return [(c.kind.value, c.parameter) for c in self.channels]
