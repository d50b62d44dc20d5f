import logging
from typing import Any, Dict

import numpy as np

from ....application.training.interfaces.optimizer import Objective, Optimizer
from ....domain.pipeline.entities.training import AdamConfig
from ....domain.shared.errors import ValidationError

logger = logging.getLogger(__name__)


class AdamOptimizer(Optimizer):
    """Adam on the exact parameter-shift gradient of the batch objective"""

    def __init__(self, config: AdamConfig):
        self.config = config
        self.t = 0
        self.m: np.ndarray | None = None
        self.v: np.ndarray | None = None

    def step(self, theta: np.ndarray, objective: Objective, rng: np.random.Generator) -> np.ndarray:
        cfg = self.config
        grad = objective.gradient(theta)
        if self.m is None:
            self.m = np.zeros_like(theta, dtype=float)
            self.v = np.zeros_like(theta, dtype=float)
        if self.m.shape != theta.shape:
            raise ValidationError(f"Adam state has shape {self.m.shape}, parameters have {theta.shape}")

        self.t += 1
        self.m = cfg.beta1 * self.m + (1.0 - cfg.beta1) * grad
        self.v = cfg.beta2 * self.v + (1.0 - cfg.beta2) * grad ** 2
        m_hat = self.m / (1.0 - cfg.beta1 ** self.t)
        v_hat = self.v / (1.0 - cfg.beta2 ** self.t)
        return theta - cfg.lr * m_hat / (np.sqrt(v_hat) + cfg.eps)

    def state(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "m": None if self.m is None else self.m.tolist(),
            "v": None if self.v is None else self.v.tolist(),
        }

    def load_state(self, state: Dict[str, Any]) -> None:
        try:
            self.t = int(state["t"])
            self.m = None if state["m"] is None else np.asarray(state["m"], dtype=float)
            self.v = None if state["v"] is None else np.asarray(state["v"], dtype=float)
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Stored optimizer state is not an Adam state: {e}") from e
        logger.debug(f"Adam state restored at step {self.t}")
