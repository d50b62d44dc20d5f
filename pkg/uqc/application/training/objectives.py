"""Batch objectives for the two training modes."""

from typing import List, Optional

import numpy as np

from ...domain.decision.entities.decision import ThresholdPolicy
from ...domain.decision.services.classifiers import CircuitRun, classify_m3
from ...domain.decision.services.execution_counter import ExecutionCounter
from ...domain.pipeline.services.loss import (
    bce_cost,
    bce_gradient,
    expected_outcome_cost,
    outcome_probability,
    probability_from_expectation,
)
from ...domain.qsim.services.simulator import expvals_z, hamming_weights, probabilities
from ...domain.vqc.entities.model import AnsatzWeights, CircuitSpec, DataPoint, Observable
from ...domain.vqc.services.circuit_builder import run_vqc
from ...domain.vqc.services.gradients import expectation, parameter_shift_grad
from .interfaces.optimizer import Objective


class ExpectationObjective(Objective):
    """
    Mean BCE with p = (1 - <O>)/2 on the noiseless backend.

    One expectation value counts as one execution; a parameter-shift
    gradient costs 2 |theta| + 1 of them per point.
    """

    def __init__(self, points: List[DataPoint], spec: CircuitSpec, observable: Observable):
        self.points = points
        self.spec = spec
        self.observable = observable
        self.executions = 0

    def probability(self, theta: np.ndarray, point: DataPoint) -> float:
        return float(probability_from_expectation(expectation(point, AnsatzWeights(theta), self.spec, self.observable)))

    def cost(self, theta: np.ndarray) -> float:
        costs = [bce_cost(self.probability(theta, point), point.label) for point in self.points]
        self.executions += len(self.points)
        return float(np.mean(costs))

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        weights = AnsatzWeights(theta)
        grad = np.zeros_like(theta, dtype=float)
        for point in self.points:
            p = self.probability(theta, point)
            d_expectation = parameter_shift_grad(point, weights, self.spec, self.observable)
            # dp/d<O> = -1/2
            grad += bce_gradient(p, point.label) * -0.5 * d_expectation
        self.executions += len(self.points) * (2 * theta.size + 1)
        return grad / len(self.points)


class SampledOutcomeObjective(Objective):
    """
    Mean BCE of one sampled unambiguous decision per point.

    Every drawn shot is recorded on ``counter``; ``executions`` mirrors
    its total for this objective.
    """

    def __init__(
        self,
        points: List[DataPoint],
        spec: CircuitSpec,
        policy: ThresholdPolicy,
        rng: np.random.Generator,
        counter: Optional[ExecutionCounter] = None,
    ):
        self.points = points
        self.spec = spec
        self.policy = policy
        self.rng = rng
        self.counter = counter if counter is not None else ExecutionCounter()

    @property
    def executions(self) -> int:
        return self.counter.total

    def cost(self, theta: np.ndarray) -> float:
        weights = AnsatzWeights(theta)
        costs = []
        for point in self.points:
            run = CircuitRun(run_vqc(point, weights, self.spec), self.counter)
            outcome = classify_m3(run, self.policy, self.rng)
            costs.append(bce_cost(outcome_probability(outcome), point.label))
        return float(np.mean(costs))


class ExpectedOutcomeObjective(Objective):
    """Exact mean of the sampled decision loss; used to monitor unambiguous training."""

    def __init__(self, points: List[DataPoint], spec: CircuitSpec, policy: ThresholdPolicy):
        self.points = points
        self.spec = spec
        self.policy = policy
        self.weights = hamming_weights(spec.k)
        self.executions = 0

    def cost(self, theta: np.ndarray) -> float:
        weights = AnsatzWeights(theta)
        costs = [
            expected_outcome_cost(
                probabilities(run_vqc(point, weights, self.spec)), self.weights, self.policy, point.label
            )
            for point in self.points
        ]
        return float(np.mean(costs))


def train_accuracy(points: List[DataPoint], theta: np.ndarray, spec: CircuitSpec, observable: Observable) -> float:
    """Fraction of points whose (1 - <O>)/2 lands on the right side of 1/2 (ties to class 1)."""
    weights = AnsatzWeights(theta)
    correct = 0
    for point in points:
        p = float(probability_from_expectation(observable.value(expvals_z(run_vqc(point, weights, spec)))))
        correct += int((p >= 0.5) == bool(point.label))
    return correct / len(points)
