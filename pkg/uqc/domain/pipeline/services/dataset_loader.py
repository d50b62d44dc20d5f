from abc import ABC, abstractmethod

from ..entities.dataset import Dataset, DatasetSource


class DatasetLoader(ABC):
    """Interface for dataset loaders"""

    @abstractmethod
    def load(self, source: DatasetSource) -> Dataset:
        """
        Read a labelled dataset.

        Args:
            source: File path, label column and column handling rules

        Returns:
            Dataset with numeric features and 0/1 labels

        Raises:
            DatasetError: Missing file or column, empty file, non-numeric
                or missing cells, non-binary labels
        """
        pass

    @abstractmethod
    def can_load(self, path: str) -> bool:
        """
        Check if this loader can handle the given file type.

        Args:
            path: Path of the file

        Returns:
            True if this loader can handle the file type
        """
        pass
