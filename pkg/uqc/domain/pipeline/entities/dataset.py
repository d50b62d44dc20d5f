from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ...shared.errors import DatasetError
from ...vqc.entities.model import DataPoint


@dataclass(frozen=True)
class DatasetSource:
    """Where a dataset comes from and how its CSV is interpreted"""
    path: str
    label_column: str
    label_map: Optional[Dict[str, int]] = None
    drop_columns: Tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Binary-labelled feature matrix.

    ``features`` has shape (n_rows, n_features); ``labels`` holds 0/1.
    """
    features: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...]
    provenance: str = ""
    row_ids: Optional[np.ndarray] = None

    def __post_init__(self):
        """Business rules validation"""
        if self.features.ndim != 2:
            raise DatasetError(f"Features must be a matrix, got shape {self.features.shape}")
        if self.labels.shape != (self.features.shape[0],):
            raise DatasetError(
                f"{self.labels.size} labels for {self.features.shape[0]} rows"
            )
        if len(self.feature_names) != self.features.shape[1]:
            raise DatasetError(
                f"{len(self.feature_names)} feature names for {self.features.shape[1]} columns"
            )
        bad = np.flatnonzero(~np.isin(self.labels, (0, 1)))
        if bad.size:
            raise DatasetError(f"Non-binary label {self.labels[bad[0]]!r}", row=int(bad[0]))
        if not np.all(np.isfinite(self.features)):
            row = int(np.flatnonzero(~np.all(np.isfinite(self.features), axis=1))[0])
            raise DatasetError("Non-finite feature value", row=row)
        if self.row_ids is None:
            object.__setattr__(self, "row_ids", np.arange(self.features.shape[0]))

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, indices: Sequence[int]) -> "Dataset":
        indices = np.asarray(indices, dtype=int)
        return Dataset(
            self.features[indices],
            self.labels[indices],
            self.feature_names,
            self.provenance,
            self.row_ids[indices],
        )

    def with_features(self, features: np.ndarray, feature_names: Sequence[str]) -> "Dataset":
        return Dataset(features, self.labels, tuple(feature_names), self.provenance, self.row_ids)

    def points(self) -> List[DataPoint]:
        return [DataPoint(row, int(label)) for row, label in zip(self.features, self.labels)]
