from typing import Callable, Optional

import numpy as np

from ...noise.entities.channel import NoiseSpec
from ...qsim.services.simulator import expvals_z
from ...shared.errors import ValidationError
from ..entities.model import AnsatzWeights, CircuitSpec, DataPoint, Observable
from .circuit_builder import run_vqc

SHIFT = np.pi / 2.0


def shift_rule(fn: Callable[[np.ndarray], float], params: np.ndarray) -> np.ndarray:
    """
    Gradient of ``fn`` at ``params`` for parameters that each drive one
    Pauli-rotation gate: (fn(p + pi/2 e_i) - fn(p - pi/2 e_i)) / 2.
    """
    grad = np.zeros_like(params, dtype=float)
    for index in np.ndindex(*params.shape):
        shifted = params.astype(float).copy()
        shifted[index] += SHIFT
        plus = fn(shifted)
        shifted[index] -= 2.0 * SHIFT
        minus = fn(shifted)
        grad[index] = (plus - minus) / 2.0
    return grad


def expectation(x: DataPoint, theta: AnsatzWeights, spec: CircuitSpec, observable: Observable) -> float:
    """Noiseless <O> for one data point."""
    return observable.value(expvals_z(run_vqc(x, theta, spec)))


def parameter_shift_grad(
    x: DataPoint,
    theta: AnsatzWeights,
    spec: CircuitSpec,
    observable: Observable,
    noise: Optional[NoiseSpec] = None,
) -> np.ndarray:
    """d<O>/d theta for every ansatz weight, shaped like theta."""
    if noise is not None:
        raise ValidationError("Parameter-shift gradients are only defined on the noiseless backend")
    theta.check_shape(spec)
    return shift_rule(
        lambda params: expectation(x, AnsatzWeights(params), spec, observable),
        theta.theta,
    )
