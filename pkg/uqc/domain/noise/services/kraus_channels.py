from typing import List

from ...qsim.entities.circuit import Circuit, Operation
from ...qsim.entities.gate import Gate
from ...qsim.entities.states import MixedState
from ...qsim.services.simulator import apply_kraus
from ...shared.errors import ValidationError
from ..entities.channel import Channel, ChannelOp, NoiseSpec


def apply_channel(state: MixedState, channel: Channel, qubit: int) -> MixedState:
    """rho -> sum_i K_i rho K_i^dagger on ``qubit``."""
    if not isinstance(state, MixedState):
        raise ValidationError("Noise channels require the mixed-state backend")
    return apply_kraus(state, channel.kraus_operators(), qubit)


def noisy_transform(circuit: Circuit, spec: NoiseSpec) -> Circuit:
    """
    Insert the channels of ``spec`` after every gate, on every qubit it touches.

    A CNOT gets the channel sequence on its control, then on its target.
    Channel operations already present are kept as they are.
    """
    operations: List[Operation] = []
    for op in circuit.operations:
        operations.append(op)
        if not isinstance(op, Gate):
            continue
        for qubit in op.targets:
            operations.extend(ChannelOp(channel, qubit) for channel in spec.channels)
    return Circuit(circuit.n_qubits, tuple(operations))


def global_depolarize(state: MixedState, eps: float) -> MixedState:
    """Mixing depolarization with strength ``eps`` on every qubit independently."""
    channel = Channel.depolarizing_mixing(eps)
    for qubit in range(state.n_qubits):
        state = apply_channel(state, channel, qubit)
    return state
