import logging

import numpy as np
from sklearn.decomposition import PCA
from sklearn.preprocessing import MinMaxScaler, StandardScaler

from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.preprocess_plan import PreprocessPlan
from ....domain.pipeline.services.preprocess_fitter import PreprocessFitter
from ....domain.shared.errors import ValidationError

logger = logging.getLogger(__name__)


class SklearnPreprocessFitter(PreprocessFitter):
    """
    StandardScaler -> PCA -> MinMaxScaler, fitted with scikit-learn.

    Components are sign-fixed so that each one's largest-magnitude entry
    is positive. Zero-variance features keep scale 1 and are reported.
    """

    def fit(self, train: Dataset, n_components: int) -> PreprocessPlan:
        if len(train) == 0:
            raise ValidationError("Cannot fit preprocessing on an empty training split")
        if not 1 <= n_components <= train.n_features:
            raise ValidationError(
                f"Requested {n_components} components from {train.n_features} features"
            )

        scaler = StandardScaler().fit(train.features)
        zero_variance = tuple(int(i) for i in np.flatnonzero(scaler.var_ == 0.0))
        if zero_variance:
            names = [train.feature_names[i] for i in zero_variance]
            logger.warning(f"Zero-variance features {names}: standard deviation replaced by 1")
        standardized = scaler.transform(train.features)

        rank = int(np.linalg.matrix_rank(standardized - standardized.mean(axis=0)))
        if n_components > rank:
            raise ValidationError(f"Requested {n_components} components but the training data has rank {rank}")

        pca = PCA(n_components=n_components, svd_solver="full").fit(standardized)
        components = pca.components_.copy()
        pivots = np.argmax(np.abs(components), axis=1)
        signs = np.sign(components[np.arange(n_components), pivots])
        components *= signs[:, None]

        projected = standardized @ components.T
        minmax = MinMaxScaler().fit(projected)
        data_range = np.where(minmax.data_range_ > 0.0, minmax.data_range_, 1.0)

        logger.debug(f"Explained variance ratios: {np.round(pca.explained_variance_ratio_, 6).tolist()}")
        return PreprocessPlan(
            mean=scaler.mean_.copy(),
            scale=scaler.scale_.copy(),
            components=components,
            explained_variance=pca.explained_variance_ratio_.copy(),
            data_min=minmax.data_min_.copy(),
            data_range=data_range,
            zero_variance_features=zero_variance,
        )
