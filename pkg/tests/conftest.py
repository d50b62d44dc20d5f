import logging

import numpy as np
import pytest

from tests.support import make_toy_dataset, write_wdbc_like_csv


@pytest.fixture(autouse=True)
def quiet_logging(caplog):
    caplog.set_level(logging.WARNING)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def toy_dataset():
    return make_toy_dataset()


@pytest.fixture
def wdbc_like_csv(tmp_path):
    return write_wdbc_like_csv(tmp_path / "wdbc_like.csv")
