import logging

import numpy as np
import pytest

from uqc.domain.pipeline.entities.dataset import Dataset
from uqc.domain.shared.errors import ValidationError
from uqc.infrastructure.preprocessing.adapters.sklearn_preprocess_fitter import SklearnPreprocessFitter


def _dataset(features):
    features = np.asarray(features, dtype=float)
    labels = np.arange(features.shape[0]) % 2
    return Dataset(features, labels, tuple(f"f{i}" for i in range(features.shape[1])))


@pytest.fixture
def fitter():
    return SklearnPreprocessFitter()


class TestSklearnPreprocessFitter:
    def test_points_on_a_line_need_one_component(self, fitter):
        x = np.linspace(-2.0, 3.0, 30)
        plan = fitter.fit(_dataset(np.column_stack([x, 2 * x + 1, -x])), 1)
        assert plan.explained_variance[0] >= 0.999

    def test_training_outputs_span_unit_interval(self, fitter, rng):
        train = _dataset(rng.normal(size=(50, 4)))
        plan = fitter.fit(train, 2)
        out = plan.transform(train.features)
        assert out.shape == (50, 2)
        assert np.allclose(out.min(axis=0), 0.0)
        assert np.allclose(out.max(axis=0), 1.0)

    def test_unseen_points_are_clipped(self, fitter, rng):
        plan = fitter.fit(_dataset(rng.normal(size=(30, 3))), 2)
        out = plan.transform(np.full((1, 3), 50.0))
        assert np.all((out >= 0.0) & (out <= 1.0))

    def test_components_are_sign_fixed(self, fitter, rng):
        plan = fitter.fit(_dataset(rng.normal(size=(40, 3)) @ np.diag([3.0, 2.0, 1.0])), 3)
        pivots = np.argmax(np.abs(plan.components), axis=1)
        assert np.all(plan.components[np.arange(3), pivots] > 0)

    def test_matches_direct_eigendecomposition(self, fitter):
        generator = np.random.default_rng(53)
        mixing = generator.normal(size=(5, 5))
        features = generator.normal(size=(80, 5)) @ np.diag([5.0, 3.0, 2.0, 1.0, 0.5]) @ mixing
        plan = fitter.fit(_dataset(features), 3)

        standardized = (features - features.mean(axis=0)) / features.std(axis=0)
        eigenvalues, eigenvectors = np.linalg.eigh(np.cov(standardized, rowvar=False))
        order = np.argsort(eigenvalues)[::-1]
        eigenvalues, eigenvectors = eigenvalues[order], eigenvectors[:, order]

        assert np.allclose(plan.explained_variance, eigenvalues[:3] / eigenvalues.sum(), atol=1e-10)
        overlaps = np.abs(np.sum(plan.components * eigenvectors[:, :3].T, axis=1))
        assert np.allclose(overlaps, 1.0, atol=1e-6)

    def test_too_many_components(self, fitter, rng):
        with pytest.raises(ValidationError):
            fitter.fit(_dataset(rng.normal(size=(10, 3))), 5)

    def test_rank_deficient_data(self, fitter):
        x = np.linspace(0.0, 1.0, 20)
        with pytest.raises(ValidationError, match="rank"):
            fitter.fit(_dataset(np.column_stack([x, 2 * x])), 2)

    def test_zero_variance_feature_is_reported(self, fitter, rng, caplog):
        features = np.column_stack([rng.normal(size=25), np.full(25, 4.0), rng.normal(size=25)])
        with caplog.at_level(logging.WARNING):
            plan = fitter.fit(_dataset(features), 2)
        assert plan.zero_variance_features == (1,)
        assert plan.scale[1] == 1.0
        assert "Zero-variance" in caplog.text

    def test_empty_training_split(self, fitter):
        with pytest.raises(ValidationError):
            fitter.fit(_dataset(np.zeros((0, 2))), 1)
