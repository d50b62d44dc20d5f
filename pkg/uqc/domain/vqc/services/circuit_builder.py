"""
Builders for the classifier circuit U_A(x, theta) U_FM(x) |0...0>.

Pair entanglers use control = higher-index qubit and target = lower-index
qubit; the pair phase sits on the control.
"""

from typing import List, Optional, Union

import numpy as np

from ...noise.entities.channel import NoiseSpec
from ...noise.services.kraus_channels import noisy_transform
from ...qsim.entities.circuit import Circuit
from ...qsim.entities.gate import Gate
from ...qsim.entities.states import MixedState, PureState
from ...qsim.services.simulator import run_circuit
from ...shared.errors import ValidationError
from ..entities.model import AnsatzWeights, CircuitSpec, DataPoint


def build_feature_map(x: DataPoint, l_fm: int) -> Circuit:
    """ZZ-entangling feature map over a linear chain of adjacent pairs, repeated ``l_fm`` times."""
    k = x.k
    if k < 2:
        raise ValidationError(f"The entangling feature map needs at least 2 qubits, got {k}")
    if l_fm < 1:
        raise ValidationError(f"Feature map needs at least one layer, got {l_fm}")

    gates: List[Gate] = []
    for _ in range(l_fm):
        gates.extend(Gate.h(j) for j in range(k))
        gates.extend(Gate.p(j, 2.0 * x.features[j]) for j in range(k))
        for j in range(k - 1):
            phi = 2.0 * (np.pi - x.features[j]) * (np.pi - x.features[j + 1])
            gates.append(Gate.cnot(j + 1, j))
            gates.append(Gate.p(j + 1, phi))
            gates.append(Gate.cnot(j + 1, j))
    return Circuit(k, tuple(gates))


def build_ansatz(x: DataPoint, theta: AnsatzWeights, l_a: int) -> Circuit:
    """Reverse-entangling ansatz that re-uploads ``x`` in every layer."""
    k = x.k
    if theta.theta.shape != (l_a + 1, k):
        raise ValidationError(f"Weights have shape {theta.theta.shape}, expected {(l_a + 1, k)}")

    gates: List[Gate] = [Gate.ry(j, theta.theta[0, j], binding=(0, j)) for j in range(k)]
    for layer in range(1, l_a + 1):
        gates.extend(Gate.ry(j, x.features[j]) for j in range(k))
        gates.extend(Gate.cnot(j + 1, j) for j in reversed(range(k - 1)))
        gates.extend(Gate.ry(j, theta.theta[layer, j], binding=(layer, j)) for j in range(k))
    return Circuit(k, tuple(gates))


def build_vqc(x: DataPoint, theta: AnsatzWeights, spec: CircuitSpec, noise: Optional[NoiseSpec] = None) -> Circuit:
    """Composed circuit, with noise channels interleaved when ``noise`` is given."""
    x.check_width(spec)
    theta.check_shape(spec)
    circuit = build_feature_map(x, spec.l_fm) + build_ansatz(x, theta, spec.l_a)
    if noise is not None:
        circuit = noisy_transform(circuit, noise)
    return circuit


def run_vqc(
    x: DataPoint,
    theta: AnsatzWeights,
    spec: CircuitSpec,
    noise: Optional[NoiseSpec] = None,
    mixed: bool = False,
) -> Union[PureState, MixedState]:
    """
    Output state of the classifier for one data point.

    A noise spec forces the mixed-state backend; ``mixed`` selects it for
    noiseless runs as well.
    """
    circuit = build_vqc(x, theta, spec, noise)
    return run_circuit(circuit, mixed=mixed or noise is not None)
