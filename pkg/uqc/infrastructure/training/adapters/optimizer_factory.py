from ....application.training.interfaces.optimizer import Optimizer
from ....domain.pipeline.entities.training import OptimizerKind, TrainConfig
from ....domain.shared.errors import ValidationError
from .adam_optimizer import AdamOptimizer
from .spsa_optimizer import SPSAOptimizer


def create_optimizer(config: TrainConfig) -> Optimizer:
    """Create a fresh optimizer for the configured kind.

    Args:
        config: Training configuration carrying the optimizer kind and its hyperparameters

    Returns:
        Optimizer with empty state

    Raises:
        ValidationError: If the optimizer kind is not supported
    """
    if config.optimizer is OptimizerKind.ADAM:
        return AdamOptimizer(config.adam)
    elif config.optimizer is OptimizerKind.SPSA:
        return SPSAOptimizer(config.spsa)
    raise ValidationError(f"Unsupported optimizer: {config.optimizer}")
