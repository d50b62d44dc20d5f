from functools import lru_cache
import logging
import platform
from importlib import metadata
from pathlib import Path
from typing import Dict

from .application.evaluation.use_cases.evaluate_model_use_case import EvaluateModelUseCase
from .application.pipeline.experiment_runner import ExperimentRunner, RunContext
from .application.preprocessing.use_cases.preprocess_dataset_use_case import PreprocessDatasetUseCase
from .application.theory.use_cases.monte_carlo_check_use_case import MonteCarloCheckUseCase
from .application.theory.use_cases.theory_sweep_use_case import TheorySweepUseCase
from .application.training.use_cases.train_m3_constrained_use_case import TrainM3ConstrainedUseCase
from .application.training.use_cases.train_model_use_case import TrainModelUseCase
from .domain.shared.repositories.event_store import EventStore
from .infrastructure.ingestion.adapters.csv_dataset_loader import CSVDatasetLoader
from .infrastructure.preprocessing.adapters.sklearn_preprocess_fitter import SklearnPreprocessFitter
from .infrastructure.shared.config.experiment_config import ExperimentConfig
from .infrastructure.shared.config.settings import RunSettings, get_settings
from .infrastructure.shared.persistence.file_run_repository import FileRunRepository
from .infrastructure.shared.persistence.in_memory_event_store import InMemoryEventStore
from .infrastructure.training.adapters.optimizer_factory import create_optimizer

logger = logging.getLogger(__name__)

TRACKED_PACKAGES = ("numpy", "scipy", "pandas", "scikit-learn", "pydantic", "pydantic-settings")


@lru_cache
def get_run_settings() -> RunSettings:
    """Get run settings from shared configuration."""
    return get_settings().run


@lru_cache
def get_event_store() -> EventStore:
    """Get the process-wide event store."""
    return InMemoryEventStore()


@lru_cache
def get_package_versions() -> Dict[str, str]:
    """Versions recorded in every run manifest."""
    versions = {"python": platform.python_version()}
    for name in TRACKED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


# Use cases
def get_preprocess_dataset_use_case() -> PreprocessDatasetUseCase:
    return PreprocessDatasetUseCase(CSVDatasetLoader(), SklearnPreprocessFitter())


def get_train_model_use_case() -> TrainModelUseCase:
    return TrainModelUseCase(create_optimizer)


def get_train_m3_use_case() -> TrainM3ConstrainedUseCase:
    return TrainM3ConstrainedUseCase(create_optimizer)


def get_theory_sweep_use_case() -> TheorySweepUseCase:
    return TheorySweepUseCase()


def get_monte_carlo_check_use_case() -> MonteCarloCheckUseCase:
    return MonteCarloCheckUseCase()


def get_experiment_runner(config: ExperimentConfig, output_root: Path | None = None) -> ExperimentRunner:
    """Wire a runner for the run directory named by the config hash."""
    root = Path(output_root) if output_root is not None else get_run_settings().output_root
    config_hash = config.config_hash()
    context = RunContext(
        run_id=config_hash[:12],
        config_hash=config_hash,
        config=config.model_dump(mode="json"),
        versions=get_package_versions(),
    )
    logger.info(f"Run {context.run_id} in {root / context.run_id}")
    return ExperimentRunner(
        context=context,
        run_repository=FileRunRepository(str(root / context.run_id)),
        event_store=get_event_store(),
        preprocess_dataset_uc=get_preprocess_dataset_use_case(),
        train_model_uc=get_train_model_use_case(),
        train_m3_uc=get_train_m3_use_case(),
        evaluate_model_uc=EvaluateModelUseCase(),
        theory_sweep_uc=get_theory_sweep_use_case(),
        monte_carlo_check_uc=get_monte_carlo_check_use_case(),
    )
