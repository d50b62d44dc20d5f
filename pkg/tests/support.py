"""Builders shared by the test modules."""
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from uqc.domain.decision.entities.decision import ThresholdPolicy
from uqc.domain.noise.entities.channel import NoiseSpec
from uqc.domain.pipeline.entities.dataset import Dataset, DatasetSource
from uqc.domain.pipeline.entities.experiment import Experiment
from uqc.domain.pipeline.entities.training import TrainConfig
from uqc.domain.vqc.entities.model import CircuitSpec


def random_pure_amplitudes(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    vector = rng.normal(size=2 ** n_qubits) + 1j * rng.normal(size=2 ** n_qubits)
    return vector / np.linalg.norm(vector)


def random_density_matrix(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    dim = 2 ** n_qubits
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def make_toy_dataset(n_rows: int = 40, n_features: int = 2, seed: int = 7) -> Dataset:
    """Two well separated clusters in [0, 1]^d, class 0 low and class 1 high."""
    generator = np.random.default_rng(seed)
    labels = np.array([i % 2 for i in range(n_rows)])
    low = generator.uniform(0.0, 0.25, size=(n_rows, n_features))
    high = generator.uniform(0.75, 1.0, size=(n_rows, n_features))
    features = np.where(labels[:, None] == 1, high, low)
    return Dataset(features, labels, tuple(f"f{i}" for i in range(n_features)), provenance="toy")


def write_wdbc_like_csv(path: Path, n_rows: int = 60, seed: int = 3) -> Path:
    """Small file in the WDBC layout: id, diagnosis (M/B), numeric columns, trailing empty column."""
    generator = np.random.default_rng(seed)
    diagnosis = np.where(np.arange(n_rows) % 3 == 0, "M", "B")
    shift = np.where(diagnosis == "M", 2.0, 0.0)
    frame = pd.DataFrame({"id": np.arange(1000, 1000 + n_rows), "diagnosis": diagnosis})
    for j in range(5):
        frame[f"feature_{j}"] = generator.normal(loc=shift * (j + 1), scale=1.0 + j, size=n_rows)
    frame["Unnamed: 32"] = np.nan
    frame.to_csv(path, index=False)
    return path


def wdbc_like_source(path: Path) -> DatasetSource:
    return DatasetSource(str(path), "diagnosis", {"M": 1, "B": 0}, ("id", "Unnamed: 32"))


def make_experiment(
    source: Optional[DatasetSource] = None,
    k: int = 2,
    max_epochs: int = 2,
    runs: int = 2,
    shots: int = 16,
    **overrides,
) -> Experiment:
    fields = dict(
        source=source,
        circuit=CircuitSpec(k, 1, 1),
        train=TrainConfig(max_epochs=max_epochs, batch_size=8, seed=5),
        policy=ThresholdPolicy(l=k, t_c=10),
        noise=NoiseSpec.default(),
        shots=shots,
        runs=runs,
        seed=11,
    )
    fields.update(overrides)
    return Experiment(**fields)
