from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ...shared.errors import ValidationError


class GateKind(Enum):
    """Supported gate set"""
    H = "H"
    RY = "RY"
    P = "P"
    CNOT = "CNOT"


_PARAMETRIC = {GateKind.RY, GateKind.P}

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)

# basis |control target>
_CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)


@dataclass(frozen=True)
class Gate:
    """
    A single gate application.

    ``targets`` is ``(qubit,)`` for one-qubit gates and ``(control, target)``
    for CNOT. ``binding`` names the weight entry ``(layer, qubit)`` a
    trainable rotation reads its angle from; data-dependent and fixed
    gates carry ``None``.
    """
    kind: GateKind
    targets: Tuple[int, ...]
    angle: Optional[float] = None
    binding: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        """Business rules validation"""
        expected = 2 if self.kind is GateKind.CNOT else 1
        if len(self.targets) != expected:
            raise ValidationError(f"{self.kind.value} acts on {expected} qubit(s), got targets {self.targets}")
        if self.kind is GateKind.CNOT and self.targets[0] == self.targets[1]:
            raise ValidationError(f"CNOT control and target must differ, got {self.targets}")
        if self.kind in _PARAMETRIC:
            if self.angle is None or not np.isfinite(self.angle):
                raise ValidationError(f"{self.kind.value} needs a finite angle, got {self.angle}")
        elif self.angle is not None:
            raise ValidationError(f"{self.kind.value} takes no angle")

    @classmethod
    def h(cls, qubit: int) -> "Gate":
        return cls(GateKind.H, (qubit,))

    @classmethod
    def ry(cls, qubit: int, theta: float, binding: Optional[Tuple[int, int]] = None) -> "Gate":
        return cls(GateKind.RY, (qubit,), float(theta), binding)

    @classmethod
    def p(cls, qubit: int, phi: float) -> "Gate":
        return cls(GateKind.P, (qubit,), float(phi))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(GateKind.CNOT, (control, target))

    @property
    def is_trainable(self) -> bool:
        return self.binding is not None

    def matrix(self) -> np.ndarray:
        """Unitary matrix of the gate, ordered like ``targets``."""
        if self.kind is GateKind.H:
            return _H
        if self.kind is GateKind.RY:
            c, s = np.cos(self.angle / 2.0), np.sin(self.angle / 2.0)
            return np.array([[c, -s], [s, c]], dtype=complex)
        if self.kind is GateKind.P:
            return np.array([[1.0, 0.0], [0.0, np.exp(1j * self.angle)]], dtype=complex)
        return _CNOT
