"""
DTOs (Data Transfer Objects) for run artifacts using Pydantic.
Every JSON document and every CSV row passes through one of these
models before it is written; NaN and infinities are rejected.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class ArtifactModel(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False, populate_by_name=True)


# =====================
# Prep
# =====================

class DatasetDTO(ArtifactModel):
    feature_names: List[str]
    provenance: str = ""
    row_ids: List[int]
    labels: List[int]
    features: List[List[float]]


class PreprocessPlanDTO(ArtifactModel):
    mean: List[float]
    scale: List[float]
    components: List[List[float]]
    explained_variance: List[float]
    data_min: List[float]
    data_range: List[float]
    zero_variance_features: List[int] = Field(default_factory=list)


# =====================
# Train
# =====================

class CircuitSpecDTO(ArtifactModel):
    k: int
    l_fm: int
    l_a: int


class ThresholdPolicyDTO(ArtifactModel):
    l: int
    t_c: Optional[int]
    fallback: str


class TrainedModelDTO(ArtifactModel):
    variant: str
    spec: CircuitSpecDTO
    weights: List[List[float]]
    optimizer: str
    optimizer_state: Dict[str, Any]
    seed: int
    start_epoch: int
    epochs: int
    diverged: bool = False
    stopped_early: bool = False
    policy: Optional[ThresholdPolicyDTO] = None


class HistoryRowDTO(ArtifactModel):
    epoch: int
    cost: float
    executions: int
    running_min: float


# =====================
# Eval
# =====================

class RunRecordDTO(ArtifactModel):
    run: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float
    executions: int
    acceptance_rate: Optional[float] = None


class MetricsReportDTO(ArtifactModel):
    model: str
    n_qubits: int
    noise: str
    backend: str
    runs: int
    test_size: int
    shots: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    roc_auc: float
    accuracy_std: float
    precision_std: float
    recall_std: float
    f1_std: float
    roc_auc_std: float
    avg_executions: float
    total_executions: int
    saving_factor: float
    acceptance_rate: Optional[float] = None
    records: List[RunRecordDTO]


class DecisionRowDTO(ArtifactModel):
    run: int
    point_id: int
    model: str
    label: str
    final_label: int
    true_label: int
    shots_used: int
    accepted: bool
    probability: Optional[float] = None


class SummaryRowDTO(ArtifactModel):
    model: str = Field(alias="Model")
    qubits: int = Field(alias="Qubits")
    noise: str = Field(alias="Noise")
    avg_executions: float = Field(alias="Avg. executions")
    acc: float = Field(alias="ACC")
    pre: float = Field(alias="PRE")
    rec: float = Field(alias="REC")
    f1: float = Field(alias="F1")
    roc_auc: float = Field(alias="ROC-AUC")


# =====================
# Theory
# =====================

class TheoryRowDTO(ArtifactModel):
    N: int
    k: int
    l: int
    delta: float
    eps: float
    T: int
    p_succ: float
    p_noisy_first_qubit: float
    p_avg_noisy: float
    p_lifted: float
    p_multishot: float
    p0: float
    p1: float
    p_u: float
    E_T: float
    noise_coeff: float
    stirling_coeff: float
    stirling_rel_error: float
    mc_trials: Optional[int] = None
    mc_p_u: Optional[float] = None
    mc_p_u_se: Optional[float] = None
    mc_E_T: Optional[float] = None
    mc_E_T_se: Optional[float] = None
    mc_multishot: Optional[float] = None
    mc_multishot_se: Optional[float] = None


class CheckRowDTO(ArtifactModel):
    name: str
    expected: float
    observed: float
    stderr: float
    tolerance: float
    passed: bool
