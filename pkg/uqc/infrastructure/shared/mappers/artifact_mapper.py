"""
Mapper between domain entities and artifact DTOs.
"""
from typing import Any, Dict

import numpy as np

from ....domain.decision.entities.decision import FallbackPolicy, ModelVariant, ThresholdPolicy
from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.metrics_report import MetricsReport, PointDecision
from ....domain.pipeline.entities.preprocess_plan import PreprocessPlan
from ....domain.pipeline.entities.training import EpochRecord, OptimizerKind, TrainedModel
from ....domain.vqc.entities.model import AnsatzWeights, CircuitSpec
from ..models.artifact_dto import (
    CircuitSpecDTO,
    DatasetDTO,
    MetricsReportDTO,
    PreprocessPlanDTO,
    RunRecordDTO,
    ThresholdPolicyDTO,
    TrainedModelDTO,
)


class ArtifactMapper:
    """
    Maps domain entities to DTOs (for writing) and back (for reading).

    CSV rows are returned as plain dicts; the repository validates them.
    """

    # ---- datasets and plans

    @staticmethod
    def dataset_to_dto(dataset: Dataset) -> DatasetDTO:
        return DatasetDTO(
            feature_names=list(dataset.feature_names),
            provenance=dataset.provenance,
            row_ids=[int(i) for i in dataset.row_ids],
            labels=[int(y) for y in dataset.labels],
            features=dataset.features.tolist(),
        )

    @staticmethod
    def dataset_to_domain(dto: DatasetDTO) -> Dataset:
        n_features = len(dto.feature_names)
        return Dataset(
            features=np.asarray(dto.features, dtype=float).reshape(len(dto.labels), n_features),
            labels=np.asarray(dto.labels, dtype=int),
            feature_names=tuple(dto.feature_names),
            provenance=dto.provenance,
            row_ids=np.asarray(dto.row_ids, dtype=int),
        )

    @staticmethod
    def plan_to_dto(plan: PreprocessPlan) -> PreprocessPlanDTO:
        return PreprocessPlanDTO(
            mean=plan.mean.tolist(),
            scale=plan.scale.tolist(),
            components=plan.components.tolist(),
            explained_variance=plan.explained_variance.tolist(),
            data_min=plan.data_min.tolist(),
            data_range=plan.data_range.tolist(),
            zero_variance_features=list(plan.zero_variance_features),
        )

    @staticmethod
    def plan_to_domain(dto: PreprocessPlanDTO) -> PreprocessPlan:
        return PreprocessPlan(
            mean=np.asarray(dto.mean, dtype=float),
            scale=np.asarray(dto.scale, dtype=float),
            components=np.asarray(dto.components, dtype=float).reshape(len(dto.components), len(dto.mean)),
            explained_variance=np.asarray(dto.explained_variance, dtype=float),
            data_min=np.asarray(dto.data_min, dtype=float),
            data_range=np.asarray(dto.data_range, dtype=float),
            zero_variance_features=tuple(dto.zero_variance_features),
        )

    # ---- models

    @staticmethod
    def model_to_dto(model: TrainedModel) -> TrainedModelDTO:
        policy = None
        if model.policy is not None:
            policy = ThresholdPolicyDTO(l=model.policy.l, t_c=model.policy.t_c, fallback=model.policy.fallback.value)
        return TrainedModelDTO(
            variant=model.variant.value,
            spec=CircuitSpecDTO(k=model.spec.k, l_fm=model.spec.l_fm, l_a=model.spec.l_a),
            weights=model.weights.theta.tolist(),
            optimizer=model.optimizer.value,
            optimizer_state=model.optimizer_state,
            seed=model.seed,
            start_epoch=model.start_epoch,
            epochs=model.epochs,
            diverged=model.diverged,
            stopped_early=model.stopped_early,
            policy=policy,
        )

    @staticmethod
    def model_to_domain(dto: TrainedModelDTO) -> TrainedModel:
        policy = None
        if dto.policy is not None:
            policy = ThresholdPolicy(l=dto.policy.l, t_c=dto.policy.t_c, fallback=FallbackPolicy(dto.policy.fallback))
        return TrainedModel(
            variant=ModelVariant(dto.variant),
            spec=CircuitSpec(dto.spec.k, dto.spec.l_fm, dto.spec.l_a),
            weights=AnsatzWeights(np.asarray(dto.weights, dtype=float)),
            optimizer=OptimizerKind(dto.optimizer),
            optimizer_state=dto.optimizer_state,
            seed=dto.seed,
            start_epoch=dto.start_epoch,
            epochs=dto.epochs,
            diverged=dto.diverged,
            stopped_early=dto.stopped_early,
            policy=policy,
        )

    @staticmethod
    def history_row(record: EpochRecord) -> Dict[str, Any]:
        return {
            "epoch": record.epoch,
            "cost": record.cost,
            "executions": record.executions,
            "running_min": record.running_min,
        }

    # ---- evaluation

    @staticmethod
    def report_to_dto(report: MetricsReport) -> MetricsReportDTO:
        return MetricsReportDTO(
            model=report.model.value,
            n_qubits=report.n_qubits,
            noise=report.noise_label,
            backend=report.backend.value,
            runs=report.runs,
            test_size=report.test_size,
            shots=report.shots,
            accuracy=report.accuracy,
            precision=report.precision,
            recall=report.recall,
            f1=report.f1,
            roc_auc=report.roc_auc,
            accuracy_std=report.accuracy_std,
            precision_std=report.precision_std,
            recall_std=report.recall_std,
            f1_std=report.f1_std,
            roc_auc_std=report.roc_auc_std,
            avg_executions=report.avg_executions,
            total_executions=report.total_executions,
            saving_factor=report.saving_factor,
            acceptance_rate=report.acceptance_rate,
            records=[
                RunRecordDTO(
                    run=r.run,
                    accuracy=r.accuracy,
                    precision=r.precision,
                    recall=r.recall,
                    f1=r.f1,
                    roc_auc=r.roc_auc,
                    executions=r.executions,
                    acceptance_rate=r.acceptance_rate,
                )
                for r in report.records
            ],
        )

    @staticmethod
    def decision_row(decision: PointDecision) -> Dict[str, Any]:
        return {
            "run": decision.run,
            "point_id": decision.point_id,
            "model": decision.model.value,
            "label": str(decision.label.value),
            "final_label": decision.final_label,
            "true_label": decision.true_label,
            "shots_used": decision.shots_used,
            "accepted": decision.accepted,
            "probability": decision.probability,
        }

    @staticmethod
    def summary_row(report: MetricsReport) -> Dict[str, Any]:
        return {
            "model": report.model.value.upper(),
            "qubits": report.n_qubits,
            "noise": report.noise_label,
            "avg_executions": report.avg_executions,
            "acc": report.accuracy,
            "pre": report.precision,
            "rec": report.recall,
            "f1": report.f1,
            "roc_auc": report.roc_auc,
        }
