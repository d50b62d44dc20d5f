import logging
from typing import Any, Dict

import numpy as np

from ....application.training.interfaces.optimizer import Objective, Optimizer
from ....domain.pipeline.entities.training import SPSAConfig
from ....domain.shared.errors import ValidationError

logger = logging.getLogger(__name__)


class SPSAOptimizer(Optimizer):
    """
    Simultaneous perturbation stochastic approximation.

    Each step evaluates the objective twice, at theta +- c_k * delta with
    Rademacher delta, and moves by a_k times the two-point gradient
    estimate. ``k`` counts steps across epochs and survives resume.
    """

    EVALUATIONS_PER_STEP = 2

    def __init__(self, config: SPSAConfig):
        self.config = config
        self.k = 0

    def gains(self, k: int) -> tuple[float, float]:
        cfg = self.config
        a_k = cfg.a / (k + 1 + cfg.big_a) ** cfg.alpha
        c_k = cfg.c / (k + 1) ** cfg.gamma
        return a_k, c_k

    def step(self, theta: np.ndarray, objective: Objective, rng: np.random.Generator) -> np.ndarray:
        a_k, c_k = self.gains(self.k)
        delta = rng.choice((-1.0, 1.0), size=theta.shape)
        plus = objective.cost(theta + c_k * delta)
        minus = objective.cost(theta - c_k * delta)
        # 1/delta == delta for +-1 entries
        estimate = (plus - minus) / (2.0 * c_k) * delta
        self.k += 1
        return theta - a_k * estimate

    def state(self) -> Dict[str, Any]:
        return {"k": self.k}

    def load_state(self, state: Dict[str, Any]) -> None:
        try:
            self.k = int(state["k"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Stored optimizer state is not an SPSA state: {e}") from e
        logger.debug(f"SPSA state restored at step {self.k}")
