import logging

import numpy as np
import pytest

from uqc.domain.pipeline.entities.dataset import DatasetSource
from uqc.domain.shared.errors import DatasetError
from uqc.infrastructure.ingestion.adapters.csv_dataset_loader import CSVDatasetLoader
from tests.support import wdbc_like_source


@pytest.fixture
def loader():
    return CSVDatasetLoader()


def _write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def _source(path, **kwargs):
    return DatasetSource(str(path), kwargs.pop("label_column", "label"), **kwargs)


class TestCSVDatasetLoader:
    def test_loads_wdbc_layout(self, loader, wdbc_like_csv):
        dataset = loader.load(wdbc_like_source(wdbc_like_csv))
        assert len(dataset) == 60
        assert dataset.feature_names == tuple(f"feature_{j}" for j in range(5))
        assert dataset.labels[:3].tolist() == [1, 0, 0]
        assert dataset.provenance.startswith("wdbc_like.csv sha256:")

    def test_numeric_labels_without_map(self, loader, tmp_path):
        path = _write(tmp_path, "a,b,label\n0.1,0.2,0\n0.3,0.4,1\n")
        dataset = loader.load(_source(path))
        assert dataset.labels.tolist() == [0, 1]
        assert np.allclose(dataset.features, [[0.1, 0.2], [0.3, 0.4]])

    def test_missing_file(self, loader, tmp_path):
        with pytest.raises(DatasetError, match="not found"):
            loader.load(_source(tmp_path / "absent.csv"))

    def test_empty_file(self, loader, tmp_path):
        with pytest.raises(DatasetError, match="empty"):
            loader.load(_source(_write(tmp_path, "")))

    def test_header_only(self, loader, tmp_path):
        with pytest.raises(DatasetError, match="no data rows"):
            loader.load(_source(_write(tmp_path, "a,b,label\n")))

    def test_ragged_rows(self, loader, tmp_path):
        path = _write(tmp_path, "a,b,label\n0.1,0.2,0\n0.3,0.4,1,9\n")
        with pytest.raises(DatasetError, match="Ragged"):
            loader.load(_source(path))

    def test_missing_label_column(self, loader, tmp_path):
        path = _write(tmp_path, "a,b,target\n0.1,0.2,0\n")
        with pytest.raises(DatasetError, match="Label column 'label' not found"):
            loader.load(_source(path))

    def test_non_binary_label_names_the_row(self, loader, tmp_path):
        path = _write(tmp_path, "a,label\n0.1,0\n0.2,1\n0.3,2\n")
        with pytest.raises(DatasetError) as info:
            loader.load(_source(path))
        assert info.value.row == 2

    def test_unmapped_label(self, loader, tmp_path):
        path = _write(tmp_path, "a,label\n0.1,M\n0.2,X\n")
        with pytest.raises(DatasetError) as info:
            loader.load(_source(path, label_map={"M": 1, "B": 0}))
        assert info.value.row == 1

    def test_non_numeric_feature(self, loader, tmp_path):
        path = _write(tmp_path, "a,b,label\n0.1,0.2,0\n0.3,abc,1\n")
        with pytest.raises(DatasetError, match="column 'b'") as info:
            loader.load(_source(path))
        assert info.value.row == 1

    def test_missing_drop_column_only_warns(self, loader, tmp_path, caplog):
        path = _write(tmp_path, "a,label\n0.1,0\n0.2,1\n")
        with caplog.at_level(logging.WARNING):
            dataset = loader.load(_source(path, drop_columns=("id",)))
        assert dataset.n_features == 1
        assert "Ignoring drop_columns" in caplog.text

    def test_can_load(self, loader):
        assert loader.can_load("wdbc.data")
        assert loader.can_load("DATA.CSV")
        assert not loader.can_load("notes.txt")
