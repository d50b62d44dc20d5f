import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ....domain.decision.entities.decision import (
    DecisionLabel,
    Estimator,
    ModelVariant,
    ThresholdPolicy,
)
from ....domain.decision.services.classifiers import (
    CircuitRun,
    classify_m1,
    classify_m2,
    classify_m3,
    reject_fallback,
)
from ....domain.decision.services.execution_counter import ExecutionCounter
from ....domain.noise.entities.channel import NoiseSpec
from ....domain.pipeline.entities.dataset import Dataset
from ....domain.pipeline.entities.metrics_report import Backend, MetricsReport, PointDecision, RunRecord
from ....domain.pipeline.services.metrics import METRIC_NAMES, classification_metrics, mean_and_std, roc_auc
from ....domain.shared.errors import ValidationError
from ....domain.shared.random import Stream, spawn_rng
from ....domain.vqc.entities.model import AnsatzWeights, CircuitSpec
from ....domain.vqc.services.circuit_builder import run_vqc

logger = logging.getLogger(__name__)


@dataclass
class EvaluationResult:
    report: MetricsReport
    decisions: List[PointDecision]


class EvaluateModelUseCase:
    """
    Use case for repeated classification of the test set.

    Each point's output state is simulated once per cell; the runs only
    re-sample measurements, with generator (seed, EVAL, run, point).
    """

    def execute(
        self,
        weights: AnsatzWeights,
        spec: CircuitSpec,
        test: Dataset,
        model: ModelVariant,
        shots: int,
        policy: ThresholdPolicy,
        noise: Optional[NoiseSpec],
        runs: int,
        seed: int,
        estimator: Estimator = Estimator.SAMPLED,
    ) -> EvaluationResult:
        if len(test) == 0:
            raise ValidationError("Test set is empty")
        if runs < 1:
            raise ValidationError(f"runs must be >= 1, got {runs}")
        weights.check_shape(spec)
        if model is ModelVariant.M3:
            policy.validate_for(spec.k)

        backend = Backend.DENSITY_MATRIX if noise is not None else Backend.STATEVECTOR
        counter = ExecutionCounter()
        circuit_runs = [CircuitRun(run_vqc(point, weights, spec, noise), counter) for point in test.points()]
        logger.info(f"Evaluating {model.value} on {len(test)} points, {runs} runs, backend {backend.value}")

        y_true = test.labels.astype(int)
        decisions: List[PointDecision] = []
        predictions = np.zeros((runs, len(test)), dtype=int)
        scores = np.zeros((runs, len(test)), dtype=float)
        accepted = np.zeros((runs, len(test)), dtype=bool)
        executions = np.zeros(runs, dtype=int)

        for run in range(runs):
            before = counter.total
            for i, circuit_run in enumerate(circuit_runs):
                rng = spawn_rng(seed, Stream.EVAL, run, i)
                label, final_label, shots_used, was_accepted, probability = self._classify(
                    model, circuit_run, shots, policy, rng, estimator, spec.k
                )
                decision = PointDecision(
                    run=run,
                    point_id=int(test.row_ids[i]),
                    model=model,
                    label=label,
                    final_label=final_label,
                    true_label=int(y_true[i]),
                    shots_used=shots_used,
                    accepted=was_accepted,
                    probability=probability,
                )
                decisions.append(decision)
                predictions[run, i] = decision.final_label
                accepted[run, i] = decision.accepted
                if decision.probability is not None:
                    scores[run, i] = decision.probability
                elif decision.accepted:
                    scores[run, i] = 1.0 if decision.label is DecisionLabel.CLASS1 else -1.0
            executions[run] = counter.total - before

        records = self._run_records(model, y_true, predictions, scores, accepted, executions)
        report = self._aggregate(model, spec, noise, backend, shots, len(test), records, counter.total)
        logger.info(
            f"{model.value} ({report.noise_label}): ACC {report.accuracy:.4f}, F1 {report.f1:.4f}, "
            f"avg executions {report.avg_executions:.4f}"
        )
        return EvaluationResult(report, decisions)

    def _classify(self, model, circuit_run, shots, policy, rng, estimator, n_qubits) -> tuple:
        """(label, final label, shots used, accepted, class-1 probability or None)"""
        if model is ModelVariant.M3:
            outcome = classify_m3(circuit_run, policy, rng)
            final = outcome.label if outcome.accepted else reject_fallback(outcome, policy.fallback, n_qubits)
            return outcome.label, int(final.value), outcome.shots_used, outcome.accepted, None

        classify = classify_m1 if model is ModelVariant.M1 else classify_m2
        prediction = classify(circuit_run, shots, rng, estimator)
        return prediction.label, int(prediction.label.value), prediction.shots_used, True, prediction.probability

    def _run_records(self, model, y_true, predictions, scores, accepted, executions) -> List[RunRecord]:
        runs = predictions.shape[0]
        if model is ModelVariant.M3:
            # one aggregate score per point: class-1 minus class-0 accept frequency
            aggregate_auc = roc_auc(y_true, scores.mean(axis=0))
        records = []
        for run in range(runs):
            metrics = classification_metrics(y_true, predictions[run], scores[run])
            if model is ModelVariant.M3:
                metrics["roc_auc"] = aggregate_auc
            records.append(
                RunRecord(
                    run=run,
                    executions=int(executions[run]),
                    acceptance_rate=float(accepted[run].mean()) if model is ModelVariant.M3 else None,
                    **metrics,
                )
            )
        return records

    def _aggregate(self, model, spec, noise, backend, shots, test_size, records, total_executions) -> MetricsReport:
        summary = {}
        for name in METRIC_NAMES:
            summary[name], summary[f"{name}_std"] = mean_and_std([getattr(r, name) for r in records])
        runs = len(records)
        avg_executions = total_executions / (runs * test_size)
        acceptance = (
            float(np.mean([r.acceptance_rate for r in records])) if model is ModelVariant.M3 else None
        )
        return MetricsReport(
            model=model,
            n_qubits=spec.k,
            noisy=noise is not None,
            backend=backend,
            runs=runs,
            test_size=test_size,
            shots=shots,
            avg_executions=avg_executions,
            total_executions=total_executions,
            saving_factor=shots / avg_executions if model is ModelVariant.M3 else 1.0,
            acceptance_rate=acceptance,
            records=records,
            **summary,
        )
