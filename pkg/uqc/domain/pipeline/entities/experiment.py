from dataclasses import dataclass, field
from typing import Optional, Tuple

from ...decision.entities.decision import Estimator, ModelVariant, ThresholdPolicy
from ...noise.entities.channel import NoiseSpec
from ...shared.errors import ValidationError
from ...vqc.entities.model import CircuitSpec
from .dataset import DatasetSource
from .training import TrainConfig


@dataclass(frozen=True)
class TheorySweep:
    """Grid of analytic-model parameters; ``thresholds`` empty means l = N."""
    n_qubits: Tuple[int, ...] = (3, 5, 7)
    deltas: Tuple[float, ...] = (0.5,)
    eps: Tuple[float, ...] = (0.0, 0.01)
    thresholds: Tuple[int, ...] = ()
    shots: Tuple[int, ...] = (1, 25, 1024)
    mc_trials: int = 0

    def __post_init__(self):
        """Business rules validation"""
        if not self.n_qubits or not self.deltas or not self.eps or not self.shots:
            raise ValidationError("Theory sweep axes must be non-empty")
        bad = [n for n in self.n_qubits if n < 3 or n % 2 == 0]
        if bad:
            raise ValidationError(f"Theory sweep needs odd qubit counts N >= 3, got {bad}")
        if self.mc_trials < 0:
            raise ValidationError(f"mc_trials must be >= 0, got {self.mc_trials}")


@dataclass(frozen=True)
class Experiment:
    """Everything a run needs, as validated domain objects; ``source`` may be None for theory-only runs."""
    source: Optional[DatasetSource]
    circuit: CircuitSpec
    train: TrainConfig
    policy: ThresholdPolicy
    noise: NoiseSpec
    models: Tuple[ModelVariant, ...] = (ModelVariant.M1, ModelVariant.M2, ModelVariant.M3)
    train_models: Tuple[ModelVariant, ...] = (ModelVariant.M1, ModelVariant.M2)
    noise_modes: Tuple[bool, ...] = (False, True)
    shots: int = 1024
    runs: int = 25
    split_ratio: float = 0.8
    estimator: Estimator = Estimator.SAMPLED
    m3_weights: ModelVariant = ModelVariant.M2
    seed: int = 42
    theory: TheorySweep = field(default_factory=TheorySweep)

    def __post_init__(self):
        """Business rules validation"""
        self.policy.validate_for(self.circuit.k)
        if self.shots < 1 or self.runs < 1:
            raise ValidationError(f"shots and runs must be >= 1, got {self.shots}, {self.runs}")
        if not 0.0 < self.split_ratio < 1.0:
            raise ValidationError(f"Split ratio must lie in (0, 1), got {self.split_ratio}")
        if self.m3_weights not in (ModelVariant.M2, ModelVariant.M3):
            raise ValidationError(f"M3 decisions use M2 or M3 weights, got {self.m3_weights.value}")

    def weights_for(self, model: ModelVariant) -> ModelVariant:
        """Which trained model supplies the weights for ``model``."""
        return self.m3_weights if model is ModelVariant.M3 else model
