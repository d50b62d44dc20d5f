from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ...decision.entities.decision import ModelVariant
from ...pipeline.entities.dataset import Dataset
from ...pipeline.entities.metrics_report import MetricsReport, PointDecision
from ...pipeline.entities.preprocess_plan import PreprocessPlan
from ...pipeline.entities.training import EpochRecord, TrainedModel


class RunRepository(ABC):
    """
    Interface for the artifacts of one run directory.

    Artifacts are append-only: writing an existing name with identical
    content is a no-op, different content is an IntegrityError. The
    manifest is the one document that is rewritten.
    """

    @property
    @abstractmethod
    def location(self) -> str:
        """Human-readable location of the run directory"""
        pass

    @abstractmethod
    def save_prepared(self, train: Dataset, test: Dataset, plan: PreprocessPlan) -> None:
        pass

    @abstractmethod
    def load_prepared(self) -> Optional[Tuple[Dataset, Dataset, PreprocessPlan]]:
        """Preprocessed splits and plan, or None if prep has not run"""
        pass

    @abstractmethod
    def save_model(self, model: TrainedModel, history: Sequence[EpochRecord]) -> str:
        """Save a trained model with its history and return the model artifact name"""
        pass

    @abstractmethod
    def load_model(self, variant: ModelVariant) -> Optional[TrainedModel]:
        """
        Latest stored model of ``variant`` (highest final epoch).

        Raises:
            IntegrityError: if a stored model fails its checksum
        """
        pass

    @abstractmethod
    def save_evaluation(self, report: MetricsReport, decisions: Sequence[PointDecision]) -> None:
        pass

    @abstractmethod
    def save_summary(self, reports: Sequence[MetricsReport]) -> None:
        pass

    @abstractmethod
    def save_theory_table(self, name: str, rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> None:
        """Save closed-form sweep rows as CSV with the given column order"""
        pass

    @abstractmethod
    def save_check_table(self, name: str, rows: Sequence[Dict[str, Any]]) -> None:
        """Save Monte Carlo check rows as CSV"""
        pass

    @abstractmethod
    def load_table(self, name: str) -> Optional[List[Dict[str, Any]]]:
        pass

    @abstractmethod
    def inventory(self) -> Dict[str, str]:
        """SHA-256 of every stored artifact except the manifest"""
        pass

    @abstractmethod
    def save_manifest(self, data: Dict[str, Any]) -> None:
        """Write (or overwrite) the run manifest; the file inventory is added here"""
        pass

    @abstractmethod
    def load_manifest(self) -> Optional[Dict[str, Any]]:
        pass
