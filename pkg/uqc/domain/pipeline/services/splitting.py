import logging
from typing import Tuple

import numpy as np
from sklearn.model_selection import train_test_split

from ...shared.errors import ValidationError
from ..entities.dataset import Dataset

logger = logging.getLogger(__name__)


def split(dataset: Dataset, ratio: float = 0.8, seed: int = 42) -> Tuple[Dataset, Dataset]:
    """
    Unstratified shuffled split; the test part holds ceil((1 - ratio) * n) rows.

    569 rows at ratio 0.8 give 455 train and 114 test rows.
    """
    if not 0.0 < ratio < 1.0:
        raise ValidationError(f"Split ratio must lie in (0, 1); ratio {ratio} leaves no test or train rows")
    if len(dataset) < 2:
        raise ValidationError(f"Need at least 2 rows to split, got {len(dataset)}")

    indices = np.arange(len(dataset))
    try:
        train_idx, test_idx = train_test_split(
            indices,
            test_size=round(1.0 - ratio, 12),
            random_state=seed,
            shuffle=True,
        )
    except ValueError as e:
        raise ValidationError(f"Cannot split {len(dataset)} rows at ratio {ratio}: {e}") from e

    logger.info(f"Split {len(dataset)} rows into {train_idx.size} train / {test_idx.size} test (seed {seed})")
    return dataset.subset(train_idx), dataset.subset(test_idx)
