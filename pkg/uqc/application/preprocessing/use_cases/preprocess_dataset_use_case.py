import logging
from dataclasses import dataclass
from pathlib import Path

from ....domain.pipeline.entities.dataset import Dataset, DatasetSource
from ....domain.pipeline.entities.preprocess_plan import PreprocessPlan
from ....domain.pipeline.services.dataset_loader import DatasetLoader
from ....domain.pipeline.services.preprocess_fitter import PreprocessFitter
from ....domain.pipeline.services.splitting import split
from ....domain.shared.errors import DatasetError

logger = logging.getLogger(__name__)


@dataclass
class PreparedData:
    train: Dataset
    test: Dataset
    plan: PreprocessPlan
    raw_rows: int


class PreprocessDatasetUseCase:
    """Use case for load -> split -> fit on train -> transform both splits"""

    def __init__(self, dataset_loader: DatasetLoader, preprocess_fitter: PreprocessFitter):
        self.dataset_loader = dataset_loader
        self.preprocess_fitter = preprocess_fitter

    def execute(self, source: DatasetSource, n_components: int, ratio: float, seed: int) -> PreparedData:
        if not self.dataset_loader.can_load(source.path):
            raise DatasetError(f"Unsupported dataset file type: {Path(source.path).suffix or source.path!r}")
        dataset = self.dataset_loader.load(source)
        logger.info(f"Loaded {len(dataset)} rows with {dataset.n_features} features from {source.path}")

        train, test = split(dataset, ratio, seed)
        plan = self.preprocess_fitter.fit(train, n_components)
        logger.info(
            f"Fitted preprocessing plan: {plan.n_components} components explaining "
            f"{plan.explained_variance.sum():.4f} of the standardized variance"
        )
        return PreparedData(
            train=plan.transform_dataset(train),
            test=plan.transform_dataset(test),
            plan=plan,
            raw_rows=len(dataset),
        )
