import logging
from typing import Any, Dict, Optional

from ....domain.decision.entities.decision import ModelVariant, ThresholdPolicy
from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.training import OptimizerKind, TrainConfig, TrainingResult
from ....domain.shared.errors import ValidationError
from ....domain.vqc.entities.model import AnsatzWeights, CircuitSpec
from ..objectives import ExpectedOutcomeObjective, SampledOutcomeObjective
from ..training_loop import TrainingLoop
from .train_model_use_case import OptimizerFactory, initial_weights_for

logger = logging.getLogger(__name__)


class TrainM3ConstrainedUseCase:
    """
    Use case for training directly on sampled unambiguous decisions.

    The loss is sampled, so only SPSA applies. History executions are the
    shots drawn by the optimizer in each epoch; they are bounded by
    n_batches * batch_size * T_c * 2.
    """

    def __init__(self, optimizer_factory: OptimizerFactory):
        self.optimizer_factory = optimizer_factory

    def execute(
        self,
        train: Dataset,
        spec: CircuitSpec,
        config: TrainConfig,
        policy: ThresholdPolicy,
        initial_weights: Optional[AnsatzWeights] = None,
        optimizer_state: Optional[Dict[str, Any]] = None,
        start_epoch: int = 0,
    ) -> tuple[TrainingResult, Dict[str, Any]]:
        if config.optimizer is not OptimizerKind.SPSA:
            raise ValidationError(
                f"Unambiguous training samples its loss and needs SPSA, got {config.optimizer.value}"
            )
        if policy.t_c is None:
            raise ValidationError("Unambiguous training needs a finite T_c")
        if len(train) == 0:
            raise ValidationError("Training set is empty")
        if train.n_features != spec.k:
            raise ValidationError(f"Training data has {train.n_features} features but the circuit has {spec.k} qubits")
        policy.validate_for(spec.k)

        weights = initial_weights if initial_weights is not None else initial_weights_for(spec, config, ModelVariant.M3)
        weights.check_shape(spec)
        optimizer = self.optimizer_factory(config)
        if optimizer_state:
            optimizer.load_state(optimizer_state)

        points = train.points()
        logger.info(
            f"Training m3 with SPSA on {len(points)} points (l={policy.l}, T_c={policy.t_c}, "
            f"max {config.max_epochs} epochs)"
        )
        result = TrainingLoop(optimizer, config).run(
            ModelVariant.M3,
            len(points),
            weights,
            make_objective=lambda batch, rng: SampledOutcomeObjective(
                [points[i] for i in batch], spec, policy, rng
            ),
            monitor=ExpectedOutcomeObjective(points, spec, policy),
            start_epoch=start_epoch,
        )
        logger.info(
            f"Finished m3: cost {result.initial_cost:.6f} -> {result.final_cost:.6f} "
            f"(running min {result.history[-1].running_min:.6f}) after {result.epochs_run} epochs, "
            f"{result.total_executions} executions"
        )
        return result, optimizer.state()

    @staticmethod
    def executions_bound(n_rows: int, batch_size: int, t_c: int) -> int:
        """Upper bound on executions per epoch: every point of every batch uses T_c shots in both SPSA evaluations."""
        n_batches = -(-n_rows // batch_size)
        return n_batches * batch_size * t_c * 2
