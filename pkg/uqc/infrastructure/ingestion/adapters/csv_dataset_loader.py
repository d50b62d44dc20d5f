import hashlib
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from ....domain.pipeline.entities.dataset import Dataset, DatasetSource
from ....domain.pipeline.services.dataset_loader import DatasetLoader
from ....domain.shared.errors import DatasetError

logger = logging.getLogger(__name__)


class CSVDatasetLoader(DatasetLoader):
    """
    Loader for comma-separated files with a header row.

    Row numbers in errors are 0-based data rows (the header is not counted).
    """

    # Maximum file size: 100 MB
    MAX_FILE_SIZE = 100 * 1024 * 1024

    def can_load(self, path: str) -> bool:
        """Check if file is a CSV"""
        return path.lower().endswith(('.csv', '.data'))

    def load(self, source: DatasetSource) -> Dataset:
        path = Path(source.path)
        if not path.is_file():
            raise DatasetError(f"Dataset file not found: {path}")
        if path.stat().st_size > self.MAX_FILE_SIZE:
            raise DatasetError(f"File size exceeds maximum allowed size of {self.MAX_FILE_SIZE / (1024*1024):.1f} MB")

        try:
            frame = pd.read_csv(path, skipinitialspace=True)
        except pd.errors.EmptyDataError as e:
            raise DatasetError(f"Dataset file {path} is empty") from e
        except pd.errors.ParserError as e:
            raise DatasetError(f"Ragged or malformed CSV {path}: {e}") from e

        if frame.empty:
            raise DatasetError(f"Dataset file {path} has no data rows")
        if source.label_column not in frame.columns:
            raise DatasetError(
                f"Label column '{source.label_column}' not found; columns are {list(frame.columns)}"
            )

        missing = [c for c in source.drop_columns if c not in frame.columns]
        if missing:
            logger.warning(f"Ignoring drop_columns not present in {path.name}: {missing}")
        frame = frame.drop(columns=[c for c in source.drop_columns if c in frame.columns])

        labels = self._labels(frame[source.label_column], source)
        features = frame.drop(columns=[source.label_column])
        if features.shape[1] == 0:
            raise DatasetError(f"Dataset {path} has no feature columns")
        matrix = self._features(features)

        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        logger.debug(f"Parsed {path.name}: {matrix.shape[0]} rows, {matrix.shape[1]} features, sha256 {digest[:12]}")
        return Dataset(
            features=matrix,
            labels=labels,
            feature_names=tuple(str(c) for c in features.columns),
            provenance=f"{path.name} sha256:{digest}",
        )

    def _labels(self, column: pd.Series, source: DatasetSource) -> np.ndarray:
        if source.label_map:
            mapped = column.astype(str).str.strip().map(source.label_map)
            bad = np.flatnonzero(mapped.isna().to_numpy())
            if bad.size:
                raise DatasetError(
                    f"Label {column.iloc[bad[0]]!r} not in label_map {sorted(source.label_map)}", row=int(bad[0])
                )
            values = mapped.to_numpy(dtype=float)
        else:
            values = pd.to_numeric(column, errors="coerce").to_numpy(dtype=float)
            bad = np.flatnonzero(np.isnan(values))
            if bad.size:
                raise DatasetError(f"Non-numeric or missing label {column.iloc[bad[0]]!r}", row=int(bad[0]))

        bad = np.flatnonzero(~np.isin(values, (0.0, 1.0)))
        if bad.size:
            raise DatasetError(f"Non-binary label {column.iloc[bad[0]]!r}", row=int(bad[0]))
        return values.astype(int)

    def _features(self, features: pd.DataFrame) -> np.ndarray:
        numeric = features.apply(pd.to_numeric, errors="coerce")
        invalid = numeric.isna().to_numpy()
        if invalid.any():
            row, col = map(int, np.argwhere(invalid)[0])
            raise DatasetError(
                f"Non-numeric or missing value {features.iat[row, col]!r} in column '{features.columns[col]}'",
                row=row,
            )
        return numeric.to_numpy(dtype=float)
