"""
Experiment configuration document.

A single JSON file describes a run. Defaults reproduce the reference
grid: 3 qubits, one feature-map layer, two ansatz layers, T = 1024,
l = N, T_c = 50, 25 runs, batches of 8, at most 300 epochs, Adam, seed 42.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from ....domain.shared.errors import ValidationError

logger = logging.getLogger(__name__)


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class DatasetConfig(StrictModel):
    path: str
    label_column: str = "diagnosis"
    label_map: Optional[Dict[str, int]] = None
    drop_columns: List[str] = Field(default_factory=list)
    split_ratio: float = Field(default=0.8, gt=0.0, lt=1.0)


class CircuitConfig(StrictModel):
    qubits: int = Field(default=3, ge=2)
    l_fm: int = Field(default=1, ge=1)
    l_a: int = Field(default=2, ge=1)


class PolicyConfig(StrictModel):
    """``l`` defaults to the qubit count; ``t_c = null`` retries until accepted."""
    l: Optional[int] = None
    t_c: Optional[int] = Field(default=50, ge=1)
    fallback: Literal["majority_of_attempts", "fixed_class0"] = "majority_of_attempts"


class ChannelConfig(StrictModel):
    kind: Literal["depolarizing_pauli", "depolarizing_mixing", "amplitude_damping", "phase_damping"]
    parameter: float = Field(ge=0.0, le=1.0)


def _default_channels() -> List[ChannelConfig]:
    return [
        ChannelConfig(kind="depolarizing_pauli", parameter=0.02),
        ChannelConfig(kind="amplitude_damping", parameter=0.05),
        ChannelConfig(kind="phase_damping", parameter=0.03),
    ]


class NoiseConfig(StrictModel):
    channels: List[ChannelConfig] = Field(default_factory=_default_channels)
    scale: float = Field(default=1.0, ge=0.0)


class AdamSettings(StrictModel):
    lr: float = Field(default=0.01, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)


class SPSASettings(StrictModel):
    a: float = Field(default=0.2, gt=0.0)
    c: float = Field(default=0.2, gt=0.0)
    big_a: float = Field(default=10.0, ge=0.0)
    alpha: float = Field(default=0.602, gt=0.0)
    gamma: float = Field(default=0.101, gt=0.0)


class TrainingConfig(StrictModel):
    """``seed`` defaults to the master seed."""
    optimizer: Literal["adam", "spsa"] = "adam"
    adam: AdamSettings = Field(default_factory=AdamSettings)
    spsa: SPSASettings = Field(default_factory=SPSASettings)
    batch_size: int = Field(default=8, ge=1)
    max_epochs: int = Field(default=300, ge=0)
    patience: int = Field(default=20, ge=1)
    min_delta: float = Field(default=1e-5, ge=0.0)
    seed: Optional[int] = Field(default=None, ge=0)
    log_every: int = Field(default=10, ge=1)


class TheoryConfig(StrictModel):
    """Empty ``thresholds`` means l = N for every N."""
    n_qubits: List[int] = Field(default_factory=lambda: [3, 5, 7])
    deltas: List[float] = Field(default_factory=lambda: [0.5])
    eps: List[float] = Field(default_factory=lambda: [0.0, 0.01])
    thresholds: List[int] = Field(default_factory=list)
    shots: List[int] = Field(default_factory=lambda: [1, 25, 1024])
    mc_trials: int = Field(default=0, ge=0)


class ExperimentConfig(StrictModel):
    dataset: Optional[DatasetConfig] = None
    circuit: CircuitConfig = Field(default_factory=CircuitConfig)
    models: List[Literal["m1", "m2", "m3"]] = Field(default_factory=lambda: ["m1", "m2", "m3"])
    train_models: List[Literal["m1", "m2", "m3"]] = Field(default_factory=lambda: ["m1", "m2"])
    m3_weights: Literal["m2", "m3"] = "m2"
    noise_modes: List[Literal["noiseless", "noisy"]] = Field(default_factory=lambda: ["noiseless", "noisy"])
    shots: int = Field(default=1024, ge=1)
    runs: int = Field(default=25, ge=1)
    estimator: Literal["sampled", "analytic"] = "sampled"
    policy: PolicyConfig = Field(default_factory=PolicyConfig)
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    train: TrainingConfig = Field(default_factory=TrainingConfig)
    theory: TheoryConfig = Field(default_factory=TheoryConfig)
    seed: int = Field(default=42, ge=0)

    @model_validator(mode="after")
    def resolve_defaults(self) -> "ExperimentConfig":
        """Fill values that default to other fields, so the hash sees them."""
        if self.policy.l is None:
            self.policy.l = self.circuit.qubits
        if self.train.seed is None:
            self.train.seed = self.seed
        return self

    def canonical_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON dump."""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    @property
    def run_id(self) -> str:
        return self.config_hash()[:12]


def load_experiment_config(
    path: Optional[str],
    overrides: Optional[Dict[str, Any]] = None,
    default_seed: int = 42,
) -> ExperimentConfig:
    """
    Read and validate a config file; ``overrides`` are dotted keys
    (``"seed"``, ``"train.optimizer"``) applied before validation.

    Raises:
        ValidationError: unreadable file or invalid document
    """
    raw: Dict[str, Any] = {}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise ValidationError(f"Cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ValidationError(f"Config {path} is not valid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise ValidationError(f"Config {path} must be a JSON object")
    raw.setdefault("seed", default_seed)

    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        target = raw
        *parents, leaf = dotted.split(".")
        for key in parents:
            target = target.setdefault(key, {})
        target[leaf] = value
        logger.debug(f"Config override {dotted} = {value!r}")

    try:
        return ExperimentConfig.model_validate(raw)
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid experiment config: {e}") from e
