import logging
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ...noise.entities.channel import ChannelOp
from ...shared.errors import ValidationError
from ..entities.circuit import Circuit
from ..entities.gate import Gate
from ..entities.states import EIGENVALUE_TOLERANCE, MixedState, PureState, ShotSample

logger = logging.getLogger(__name__)

State = Union[PureState, MixedState]


def _check_qubit(n_qubits: int, qubit: int) -> None:
    if not 0 <= qubit < n_qubits:
        raise ValidationError(f"Qubit index {qubit} out of range for {n_qubits} qubits")


def _apply_to_axes(tensor: np.ndarray, matrix: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Contract a 2^k x 2^k operator into ``axes`` of a ``(2,)*m`` tensor."""
    k = len(axes)
    op = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


def _conjugate_by(matrix: np.ndarray, rho: np.ndarray, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
    """Return ``K rho K^dagger`` for an operator on ``qubits``."""
    tensor = rho.reshape((2,) * (2 * n_qubits))
    tensor = _apply_to_axes(tensor, matrix, qubits)
    tensor = _apply_to_axes(tensor, matrix.conj(), [n_qubits + q for q in qubits])
    dim = 2 ** n_qubits
    return tensor.reshape(dim, dim)


def apply_gate(state: State, gate: Gate) -> State:
    """Apply a unitary gate and return a new state of the same kind."""
    for q in gate.targets:
        _check_qubit(state.n_qubits, q)

    matrix = gate.matrix()
    if isinstance(state, PureState):
        tensor = state.amplitudes.reshape((2,) * state.n_qubits)
        tensor = _apply_to_axes(tensor, matrix, gate.targets)
        return PureState(state.n_qubits, tensor.reshape(-1))

    return MixedState(state.n_qubits, _conjugate_by(matrix, state.matrix, gate.targets, state.n_qubits))


def apply_kraus(state: MixedState, kraus_operators: Iterable[np.ndarray], qubit: int) -> MixedState:
    """Apply a single-qubit channel given by its Kraus operators."""
    if not isinstance(state, MixedState):
        raise ValidationError("Noise channels require the mixed-state backend")
    _check_qubit(state.n_qubits, qubit)

    out = np.zeros_like(state.matrix)
    for k in kraus_operators:
        out += _conjugate_by(k, state.matrix, [qubit], state.n_qubits)
    return MixedState(state.n_qubits, out)


def run_circuit(circuit: Circuit, initial: Optional[State] = None, mixed: bool = False) -> State:
    """
    Execute every operation of ``circuit`` starting from ``initial``.

    Without an initial state the run starts in |0...0>, on the mixed-state
    backend when ``mixed`` is set or the circuit carries channels.
    """
    if initial is None:
        use_mixed = mixed or circuit.is_noisy
        initial = MixedState.zero(circuit.n_qubits) if use_mixed else PureState.zero(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise ValidationError(
            f"Circuit acts on {circuit.n_qubits} qubits but the state has {initial.n_qubits}"
        )
    if circuit.is_noisy and isinstance(initial, PureState):
        raise ValidationError("Noise channels require the mixed-state backend")

    state = initial
    for op in circuit.operations:
        if isinstance(op, ChannelOp):
            state = apply_kraus(state, op.channel.kraus_operators(), op.qubit)
        else:
            state = apply_gate(state, op)
    return state


def probabilities(state: State) -> np.ndarray:
    """Z-basis outcome distribution (the diagonal of the state)."""
    if isinstance(state, PureState):
        probs = np.abs(state.amplitudes) ** 2
    else:
        probs = np.real(np.diag(state.matrix)).copy()

    smallest = float(probs.min())
    if smallest < -EIGENVALUE_TOLERANCE:
        raise ValidationError(f"Negative outcome probability {smallest!r}")
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


@lru_cache(maxsize=32)
def _z_signs(n_qubits: int) -> np.ndarray:
    """Row q holds the Z_q eigenvalue (+1/-1) of every basis index."""
    indices = np.arange(2 ** n_qubits)
    shifts = n_qubits - 1 - np.arange(n_qubits)
    bits = (indices[None, :] >> shifts[:, None]) & 1
    signs = 1.0 - 2.0 * bits
    signs.setflags(write=False)
    return signs


@lru_cache(maxsize=32)
def hamming_weights(n_qubits: int) -> np.ndarray:
    """Hamming weight of every basis index, in index order."""
    signs = _z_signs(n_qubits)
    weights = ((1.0 - signs) / 2.0).sum(axis=0).astype(int)
    weights.setflags(write=False)
    return weights


def expvals_z(state: State) -> np.ndarray:
    """Vector of <Z_q> for every qubit."""
    return _z_signs(state.n_qubits) @ probabilities(state)


def expval_z(state: State, qubit: int) -> float:
    _check_qubit(state.n_qubits, qubit)
    return float(expvals_z(state)[qubit])


def sample_indices(state: State, shots: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``shots`` basis indices from the state's outcome distribution."""
    if shots < 0:
        raise ValidationError(f"Shot count must be non-negative, got {shots}")
    probs = probabilities(state)
    return rng.choice(probs.size, size=shots, p=probs)


def sample(state: State, rng: np.random.Generator) -> ShotSample:
    index = sample_indices(state, 1, rng)[0]
    return ShotSample.from_index(index, state.n_qubits)


def partial_trace_keep(state: MixedState, qubit: int) -> MixedState:
    """Reduced density matrix of ``qubit`` (trace over every other qubit)."""
    n = state.n_qubits
    _check_qubit(n, qubit)
    tensor = state.matrix.reshape((2,) * (2 * n))
    tensor = np.moveaxis(tensor, [qubit, n + qubit], [0, n])
    rest = 2 ** (n - 1)
    reduced = np.einsum("iaja->ij", tensor.reshape(2, rest, 2, rest))
    return MixedState(1, reduced)


def dephase(state: MixedState) -> MixedState:
    """Completely dephasing channel: keep the diagonal, drop coherences."""
    return MixedState(state.n_qubits, np.diag(np.diag(state.matrix)))
