import logging
from typing import Callable, List

import numpy as np

from ...domain.decision.entities.decision import ModelVariant
from ...domain.pipeline.entities.training import EpochRecord, TrainConfig, TrainingResult
from ...domain.shared.errors import NumericError
from ...domain.shared.random import Stream, spawn_rng
from ...domain.vqc.entities.model import AnsatzWeights
from .interfaces.optimizer import Objective, Optimizer

logger = logging.getLogger(__name__)

ObjectiveFactory = Callable[[np.ndarray, np.random.Generator], Objective]


def variant_key(variant: ModelVariant) -> int:
    return list(ModelVariant).index(variant)


class TrainingLoop:
    """
    Mini-batch epochs with early stopping and divergence guard.

    Each epoch shuffles the training indices with its own generator
    (seed, TRAIN, variant, epoch), so a resumed run draws the same batches
    as an uninterrupted one. The monitored cost is evaluated on the whole
    training set after every epoch and never counts as executions.
    """

    def __init__(self, optimizer: Optimizer, config: TrainConfig):
        self.optimizer = optimizer
        self.config = config

    def run(
        self,
        variant: ModelVariant,
        n_rows: int,
        initial_weights: AnsatzWeights,
        make_objective: ObjectiveFactory,
        monitor: Objective,
        start_epoch: int = 0,
    ) -> TrainingResult:
        cfg = self.config
        theta = initial_weights.theta.astype(float).copy()
        initial_cost = monitor.cost(theta)
        if not np.isfinite(initial_cost):
            raise NumericError(f"[{variant.value}] Non-finite cost at initialization")

        history: List[EpochRecord] = [EpochRecord(start_epoch, initial_cost, 0, initial_cost)]
        result = TrainingResult(variant, initial_weights, initial_weights, history)
        best = initial_cost
        stale = 0

        for epoch in range(start_epoch + 1, start_epoch + cfg.max_epochs + 1):
            rng = spawn_rng(cfg.seed, Stream.TRAIN, variant_key(variant), epoch)
            order = rng.permutation(n_rows)
            executions = 0
            candidate = theta.copy()
            for start in range(0, n_rows, cfg.batch_size):
                batch = order[start:start + cfg.batch_size]
                objective = make_objective(batch, rng)
                candidate = self.optimizer.step(candidate, objective, rng)
                executions += objective.executions
                logger.debug(f"[{variant.value}] epoch {epoch} batch {start // cfg.batch_size}: {objective.executions} executions")
                if not np.all(np.isfinite(candidate)):
                    break

            cost = monitor.cost(candidate) if np.all(np.isfinite(candidate)) else float("nan")
            if not np.isfinite(cost):
                logger.warning(f"[{variant.value}] Training diverged at epoch {epoch}; keeping weights of epoch {epoch - 1}")
                result.diverged = True
                break

            theta = candidate
            result.weights = AnsatzWeights(theta.copy())
            running_min = min(history[-1].running_min, cost)
            history.append(EpochRecord(epoch, cost, executions, running_min))
            if epoch % cfg.log_every == 0:
                logger.info(f"[{variant.value}] epoch {epoch}: cost {cost:.6f} (best {running_min:.6f}), {executions} executions")

            if best - cost > cfg.min_delta:
                best = cost
                stale = 0
            else:
                stale += 1
            if stale >= cfg.patience:
                logger.warning(f"[{variant.value}] Early stop at epoch {epoch}: no improvement above {cfg.min_delta} for {cfg.patience} epochs")
                result.stopped_early = True
                break

        return result
