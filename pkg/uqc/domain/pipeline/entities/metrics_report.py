from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from ...decision.entities.decision import DecisionLabel, ModelVariant
from ...shared.errors import ValidationError


class Backend(Enum):
    """Simulation backend used for an evaluation cell"""
    STATEVECTOR = "statevector"
    DENSITY_MATRIX = "density_matrix"


@dataclass(frozen=True)
class PointDecision:
    """Final decision for one test point in one classification run."""
    run: int
    point_id: int
    model: ModelVariant
    label: DecisionLabel
    final_label: int
    true_label: int
    shots_used: int
    accepted: bool
    probability: Optional[float] = None


@dataclass(frozen=True)
class RunRecord:
    """Metrics of one classification run over the whole test set."""
    run: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float
    executions: int
    acceptance_rate: Optional[float] = None


@dataclass
class MetricsReport:
    """
    Aggregated metrics of ``runs`` classification runs.

    ``saving_factor`` is the shot budget T divided by the mean number of
    executions per point (1 for the many-shot models).
    """
    model: ModelVariant
    n_qubits: int
    noisy: bool
    backend: Backend
    runs: int
    test_size: int
    shots: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float
    accuracy_std: float
    precision_std: float
    recall_std: float
    f1_std: float
    roc_auc_std: float
    avg_executions: float
    total_executions: int
    saving_factor: float
    acceptance_rate: Optional[float] = None
    records: List[RunRecord] = field(default_factory=list)

    def __post_init__(self):
        """Business rules validation"""
        for name in ("accuracy", "precision", "recall", "f1", "roc_auc"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {value}")
        if self.avg_executions < 1.0:
            raise ValidationError(f"Every decision uses at least one execution, got {self.avg_executions}")

    @property
    def noise_label(self) -> str:
        return "noisy" if self.noisy else "noiseless"

    @property
    def cell_name(self) -> str:
        return f"{self.model.value}_{self.noise_label}"
