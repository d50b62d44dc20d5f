from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ...shared.errors import ValidationError
from .dataset import Dataset


@dataclass(frozen=True, eq=False)
class PreprocessPlan:
    """
    Fitted standardize -> PCA -> min-max chain.

    All statistics come from the training split. ``transform`` clips to
    [0, 1], so test points outside the training range land on the edges.
    """
    mean: np.ndarray
    scale: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray
    data_min: np.ndarray
    data_range: np.ndarray
    zero_variance_features: Tuple[int, ...] = ()

    def __post_init__(self):
        """Business rules validation"""
        d = self.mean.size
        c = self.components.shape[0]
        if self.scale.shape != (d,) or self.components.shape != (c, d):
            raise ValidationError(
                f"Inconsistent plan shapes: mean {self.mean.shape}, scale {self.scale.shape}, "
                f"components {self.components.shape}"
            )
        if self.data_min.shape != (c,) or self.data_range.shape != (c,):
            raise ValidationError(f"Min-max statistics must have {c} entries")
        if np.any(self.scale <= 0) or np.any(self.data_range <= 0):
            raise ValidationError("Scale and range entries must be positive")

    @property
    def n_components(self) -> int:
        return self.components.shape[0]

    @property
    def n_features(self) -> int:
        return self.mean.size

    def component_names(self) -> Tuple[str, ...]:
        return tuple(f"pc{i}" for i in range(self.n_components))

    def transform(self, features: np.ndarray) -> np.ndarray:
        features = np.atleast_2d(np.asarray(features, dtype=float))
        if features.shape[1] != self.n_features:
            raise ValidationError(f"Plan expects {self.n_features} features, got {features.shape[1]}")
        projected = ((features - self.mean) / self.scale) @ self.components.T
        return np.clip((projected - self.data_min) / self.data_range, 0.0, 1.0)

    def transform_dataset(self, dataset: Dataset) -> Dataset:
        return dataset.with_features(self.transform(dataset.features), self.component_names())
