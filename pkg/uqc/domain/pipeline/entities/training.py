from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ...decision.entities.decision import ModelVariant, ThresholdPolicy
from ...shared.errors import ValidationError
from ...vqc.entities.model import AnsatzWeights, CircuitSpec


class OptimizerKind(Enum):
    """Supported optimizers"""
    ADAM = "adam"
    SPSA = "spsa"


@dataclass(frozen=True)
class AdamConfig:
    lr: float = 0.01
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):
        """Business rules validation"""
        if self.lr <= 0 or self.eps <= 0:
            raise ValidationError(f"Adam lr and eps must be positive, got lr={self.lr}, eps={self.eps}")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValidationError(f"Adam betas must lie in [0, 1), got {self.beta1}, {self.beta2}")


@dataclass(frozen=True)
class SPSAConfig:
    """Gains a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma."""
    a: float = 0.2
    c: float = 0.2
    big_a: float = 10.0
    alpha: float = 0.602
    gamma: float = 0.101

    def __post_init__(self):
        """Business rules validation"""
        if self.a <= 0 or self.c <= 0 or self.big_a < 0:
            raise ValidationError(f"SPSA gains must be positive, got a={self.a}, c={self.c}, A={self.big_a}")
        if self.alpha <= 0 or self.gamma <= 0:
            raise ValidationError(f"SPSA decay exponents must be positive, got {self.alpha}, {self.gamma}")


@dataclass(frozen=True)
class TrainConfig:
    """
    Training hyperparameters.

    ``max_epochs = 0`` is accepted and leaves the initialization unchanged.
    """
    optimizer: OptimizerKind = OptimizerKind.ADAM
    adam: AdamConfig = field(default_factory=AdamConfig)
    spsa: SPSAConfig = field(default_factory=SPSAConfig)
    batch_size: int = 8
    max_epochs: int = 300
    patience: int = 20
    min_delta: float = 1e-5
    seed: int = 42
    log_every: int = 10

    def __post_init__(self):
        """Business rules validation"""
        if self.batch_size < 1:
            raise ValidationError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.max_epochs < 0:
            raise ValidationError(f"max_epochs must be >= 0, got {self.max_epochs}")
        if self.patience < 1:
            raise ValidationError(f"patience must be >= 1, got {self.patience}")
        if self.min_delta < 0:
            raise ValidationError(f"min_delta must be >= 0, got {self.min_delta}")


@dataclass(frozen=True)
class EpochRecord:
    """One row of the training history; epoch 0 is the initialization."""
    epoch: int
    cost: float
    executions: int
    running_min: float


@dataclass
class TrainingResult:
    variant: ModelVariant
    weights: AnsatzWeights
    initial_weights: AnsatzWeights
    history: List[EpochRecord] = field(default_factory=list)
    diverged: bool = False
    stopped_early: bool = False

    @property
    def epochs_run(self) -> int:
        return self.history[-1].epoch if self.history else 0

    @property
    def total_executions(self) -> int:
        return sum(record.executions for record in self.history)

    @property
    def initial_cost(self) -> Optional[float]:
        return self.history[0].cost if self.history else None

    @property
    def final_cost(self) -> Optional[float]:
        return self.history[-1].cost if self.history else None


@dataclass
class TrainedModel:
    """
    Persisted outcome of one training command.

    ``start_epoch`` is 0 for a fresh run and the resumed epoch otherwise;
    ``epochs`` is the last epoch reached. ``policy`` is set for models
    trained on unambiguous decisions.
    """
    variant: ModelVariant
    spec: CircuitSpec
    weights: AnsatzWeights
    optimizer: OptimizerKind
    optimizer_state: Dict[str, Any]
    seed: int
    start_epoch: int
    epochs: int
    diverged: bool = False
    stopped_early: bool = False
    policy: Optional[ThresholdPolicy] = None

    def __post_init__(self):
        """Business rules validation"""
        self.weights.check_shape(self.spec)
        if self.epochs < self.start_epoch:
            raise ValidationError(f"Final epoch {self.epochs} precedes start epoch {self.start_epoch}")

    @property
    def stem(self) -> str:
        """Artifact name stem; resumed runs carry their final epoch."""
        if self.start_epoch == 0:
            return self.variant.value
        return f"{self.variant.value}_epoch{self.epochs}"

    @classmethod
    def from_result(
        cls,
        result: TrainingResult,
        spec: CircuitSpec,
        config: TrainConfig,
        optimizer_state: Dict[str, Any],
        start_epoch: int = 0,
        policy: Optional[ThresholdPolicy] = None,
    ) -> "TrainedModel":
        return cls(
            variant=result.variant,
            spec=spec,
            weights=result.weights,
            optimizer=config.optimizer,
            optimizer_state=optimizer_state,
            seed=config.seed,
            start_epoch=start_epoch,
            epochs=result.epochs_run,
            diverged=result.diverged,
            stopped_early=result.stopped_early,
            policy=policy,
        )
