import logging
from typing import Any, Callable, Dict, Optional

from ....domain.decision.entities.decision import ModelVariant
from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.training import TrainConfig, TrainingResult
from ....domain.shared.errors import ValidationError
from ....domain.shared.random import Stream, spawn_rng
from ....domain.vqc.entities.model import AnsatzWeights, CircuitSpec, Observable
from ..interfaces.optimizer import Optimizer
from ..objectives import ExpectationObjective
from ..training_loop import TrainingLoop, variant_key

logger = logging.getLogger(__name__)

OptimizerFactory = Callable[[TrainConfig], Optimizer]


def training_observable(variant: ModelVariant, k: int) -> Observable:
    """Z on qubit 0 for M1, the mean of all Z for M2."""
    if variant is ModelVariant.M1:
        return Observable.z(0, k)
    if variant is ModelVariant.M2:
        return Observable.z_mean(k)
    raise ValidationError(f"Expectation-value training is defined for m1 and m2, got {variant.value}")


def initial_weights_for(spec: CircuitSpec, config: TrainConfig, variant: ModelVariant) -> AnsatzWeights:
    return AnsatzWeights.random(spec, spawn_rng(config.seed, Stream.INIT, variant_key(variant)))


class TrainModelUseCase:
    """Use case for training the M1 or M2 classifier on expectation values"""

    def __init__(self, optimizer_factory: OptimizerFactory):
        self.optimizer_factory = optimizer_factory

    def execute(
        self,
        train: Dataset,
        spec: CircuitSpec,
        config: TrainConfig,
        variant: ModelVariant,
        initial_weights: Optional[AnsatzWeights] = None,
        optimizer_state: Optional[Dict[str, Any]] = None,
        start_epoch: int = 0,
    ) -> tuple[TrainingResult, Dict[str, Any]]:
        """
        Returns:
            The training result and the final optimizer state
        """
        if len(train) == 0:
            raise ValidationError("Training set is empty")
        if train.n_features != spec.k:
            raise ValidationError(f"Training data has {train.n_features} features but the circuit has {spec.k} qubits")

        observable = training_observable(variant, spec.k)
        weights = initial_weights if initial_weights is not None else initial_weights_for(spec, config, variant)
        weights.check_shape(spec)

        optimizer = self.optimizer_factory(config)
        if optimizer_state:
            optimizer.load_state(optimizer_state)

        points = train.points()
        logger.info(
            f"Training {variant.value} with {config.optimizer.value} on {len(points)} points "
            f"(k={spec.k}, l_fm={spec.l_fm}, l_a={spec.l_a}, max {config.max_epochs} epochs)"
        )
        result = TrainingLoop(optimizer, config).run(
            variant,
            len(points),
            weights,
            make_objective=lambda batch, rng: ExpectationObjective([points[i] for i in batch], spec, observable),
            monitor=ExpectationObjective(points, spec, observable),
            start_epoch=start_epoch,
        )
        logger.info(
            f"Finished {variant.value}: cost {result.initial_cost:.6f} -> {result.final_cost:.6f} "
            f"after {result.epochs_run} epochs, {result.total_executions} executions"
        )
        return result, optimizer.state()
