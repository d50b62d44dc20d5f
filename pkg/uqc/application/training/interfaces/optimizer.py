from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

from ....domain.shared.errors import ValidationError


class Objective(ABC):
    """
    Interface for the batch cost an optimizer minimizes.

    ``executions`` counts the circuit executions spent so far.
    """

    executions: int = 0

    @abstractmethod
    def cost(self, theta: np.ndarray) -> float:
        """Mean batch cost at ``theta``"""
        pass

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        """Exact gradient of ``cost``; sampled objectives have none"""
        raise ValidationError(f"{type(self).__name__} has no analytic gradient; use SPSA")


class Optimizer(ABC):
    """Interface for parameter update rules"""

    @abstractmethod
    def step(self, theta: np.ndarray, objective: Objective, rng: np.random.Generator) -> np.ndarray:
        """Return updated parameters after one step on ``objective``"""
        pass

    @abstractmethod
    def state(self) -> Dict[str, Any]:
        """JSON-serializable optimizer state, stored with the model for resume"""
        pass

    @abstractmethod
    def load_state(self, state: Dict[str, Any]) -> None:
        pass
