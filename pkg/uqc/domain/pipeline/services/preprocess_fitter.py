from abc import ABC, abstractmethod

from ..entities.dataset import Dataset
from ..entities.preprocess_plan import PreprocessPlan


class PreprocessFitter(ABC):
    """Interface for fitting the standardize -> PCA -> min-max chain"""

    @abstractmethod
    def fit(self, train: Dataset, n_components: int) -> PreprocessPlan:
        """
        Fit a plan on the training split only.

        Raises:
            ValidationError: Empty split, or n_components above the
                feature count or the rank of the standardized data
        """
        pass
