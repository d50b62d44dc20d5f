from dataclasses import dataclass, field
from typing import Tuple, Union

from ...noise.entities.channel import ChannelOp
from ...shared.errors import ValidationError
from .gate import Gate

Operation = Union[Gate, ChannelOp]


@dataclass(frozen=True)
class Circuit:
    """Ordered list of gate and channel applications on ``n_qubits`` qubits."""
    n_qubits: int
    operations: Tuple[Operation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        """Business rules validation"""
        if self.n_qubits < 1:
            raise ValidationError(f"Circuit needs at least one qubit, got {self.n_qubits}")
        for op in self.operations:
            qubits = op.targets if isinstance(op, Gate) else (op.qubit,)
            for q in qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValidationError(f"Qubit index {q} out of range for {self.n_qubits} qubits")

    def __len__(self) -> int:
        return len(self.operations)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValidationError("Cannot compose circuits of different widths")
        return Circuit(self.n_qubits, self.operations + other.operations)

    @property
    def gates(self) -> Tuple[Gate, ...]:
        return tuple(op for op in self.operations if isinstance(op, Gate))

    @property
    def channels(self) -> Tuple[ChannelOp, ...]:
        return tuple(op for op in self.operations if isinstance(op, ChannelOp))

    @property
    def is_noisy(self) -> bool:
        return any(isinstance(op, ChannelOp) for op in self.operations)
