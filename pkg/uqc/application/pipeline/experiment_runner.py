import logging
import traceback
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ...domain.decision.entities.decision import ModelVariant
from ...domain.pipeline.entities.dataset import Dataset
from ...domain.pipeline.entities.experiment import Experiment
from ...domain.pipeline.entities.metrics_report import MetricsReport
from ...domain.pipeline.entities.preprocess_plan import PreprocessPlan
from ...domain.pipeline.entities.training import OptimizerKind, TrainedModel
from ...domain.shared.entities.run_event import EventType, RunEvent, RunStep
from ...domain.shared.errors import NumericError, ValidationError
from ...domain.shared.repositories.event_store import EventStore
from ...domain.shared.repositories.run_repository import RunRepository
from ..evaluation.use_cases.evaluate_model_use_case import EvaluateModelUseCase
from ..preprocessing.use_cases.preprocess_dataset_use_case import PreprocessDatasetUseCase
from ..theory.use_cases.monte_carlo_check_use_case import CheckResult, MonteCarloCheckUseCase
from ..theory.use_cases.theory_sweep_use_case import TheorySweepUseCase
from ..training.use_cases.train_m3_constrained_use_case import TrainM3ConstrainedUseCase
from ..training.use_cases.train_model_use_case import TrainModelUseCase

logger = logging.getLogger(__name__)


@dataclass
class RunContext:
    """Identity of a run directory: config hash, its 12-character prefix and the config echo"""
    run_id: str
    config_hash: str
    config: Dict[str, Any]
    versions: Dict[str, str] = field(default_factory=dict)


class ExperimentRunner:
    """
    Orchestrator for the experiment commands of one run directory.

    Chain: prep -> train (m1, m2, optionally m3) -> eval (model x noise grid).
    eval runs missing upstream stages itself. theory and mc-check are
    independent of the dataset. Every command ends by rewriting the run
    manifest with its events.
    """

    def __init__(
        self,
        context: RunContext,
        run_repository: RunRepository,
        event_store: EventStore,
        preprocess_dataset_uc: PreprocessDatasetUseCase,
        train_model_uc: TrainModelUseCase,
        train_m3_uc: TrainM3ConstrainedUseCase,
        evaluate_model_uc: EvaluateModelUseCase,
        theory_sweep_uc: TheorySweepUseCase,
        monte_carlo_check_uc: MonteCarloCheckUseCase,
    ):
        self.context = context
        self.run_repository = run_repository
        self.event_store = event_store
        self.preprocess_dataset_uc = preprocess_dataset_uc
        self.train_model_uc = train_model_uc
        self.train_m3_uc = train_m3_uc
        self.evaluate_model_uc = evaluate_model_uc
        self.theory_sweep_uc = theory_sweep_uc
        self.monte_carlo_check_uc = monte_carlo_check_uc

    # ---------------------------------------------------------------- commands

    def run_prep(self, experiment: Experiment) -> Tuple[Dataset, Dataset, PreprocessPlan]:
        """Load, split and preprocess the dataset; rerunning the same config is a no-op."""
        started = datetime.now()
        mark = self._event_mark()
        try:
            prepared = self._run_prep(experiment)
            self._finish(RunStep.PREP, started, mark, "completed")
            return prepared
        except Exception as e:
            logger.error(f"Error in prep step for run {self.context.run_id}: {e}", exc_info=True)
            self._handle_error(RunStep.PREP, str(e), traceback.format_exc())
            self._finish(RunStep.PREP, started, mark, "failed")
            raise

    def run_train(
        self,
        experiment: Experiment,
        variants: Optional[Sequence[ModelVariant]] = None,
        resume: bool = False,
    ) -> List[TrainedModel]:
        """
        Train ``variants`` (default: the experiment's train_models).

        Raises:
            NumericError: if any variant diverged; its last good weights are
                saved before raising
        """
        started = datetime.now()
        mark = self._event_mark()
        try:
            variants = tuple(variants or experiment.train_models)
            train, _, _ = self._ensure_prepared(experiment)
            models = [self._run_train(experiment, train, variant, resume) for variant in variants]
            diverged = [m.variant.value for m in models if m.diverged]
            if diverged:
                raise NumericError(f"Training diverged for {', '.join(diverged)}; last good weights were saved")
            self._finish(RunStep.TRAIN, started, mark, "completed")
            return models
        except Exception as e:
            logger.error(f"Error in train step for run {self.context.run_id}: {e}", exc_info=True)
            self._handle_error(RunStep.TRAIN, str(e), traceback.format_exc())
            self._finish(RunStep.TRAIN, started, mark, "failed")
            raise

    def run_eval(self, experiment: Experiment) -> List[MetricsReport]:
        """Evaluate every (model, noise) cell and write the reports and summary table."""
        started = datetime.now()
        mark = self._event_mark()
        try:
            reports = self._run_eval(experiment)
            self._finish(RunStep.EVAL, started, mark, "completed")
            return reports
        except Exception as e:
            logger.error(f"Error in eval step for run {self.context.run_id}: {e}", exc_info=True)
            self._handle_error(RunStep.EVAL, str(e), traceback.format_exc())
            self._finish(RunStep.EVAL, started, mark, "failed")
            raise

    def run_theory(self, experiment: Experiment, mc_trials: Optional[int] = None) -> List[Dict[str, Any]]:
        started = datetime.now()
        mark = self._event_mark()
        try:
            sweep = experiment.theory if mc_trials is None else replace(experiment.theory, mc_trials=mc_trials)
            self._emit_event(EventType.INFO, RunStep.THEORY.value, "Evaluating closed forms over the sweep grid")
            rows = self.theory_sweep_uc.execute(sweep, experiment.seed)
            name = "theory.csv" if not sweep.mc_trials else f"theory_mc{sweep.mc_trials}.csv"
            self.run_repository.save_theory_table(name, rows, self.theory_sweep_uc.columns(sweep))
            self._emit_event(
                EventType.RESULT,
                RunStep.THEORY.value,
                f"Theory table written: {len(rows)} rows",
                payload={"file": name, "rows": len(rows), "mc_trials": sweep.mc_trials},
            )
            self._finish(RunStep.THEORY, started, mark, "completed")
            return rows
        except Exception as e:
            logger.error(f"Error in theory step for run {self.context.run_id}: {e}", exc_info=True)
            self._handle_error(RunStep.THEORY, str(e), traceback.format_exc())
            self._finish(RunStep.THEORY, started, mark, "failed")
            raise

    def run_mc_check(self, experiment: Experiment, trials: int) -> List[CheckResult]:
        started = datetime.now()
        mark = self._event_mark()
        try:
            self._emit_event(
                EventType.INFO, RunStep.MC_CHECK.value, f"Cross-checking closed forms with {trials} trials"
            )
            results = self.monte_carlo_check_uc.execute(trials, experiment.seed)
            rows = [asdict(r) for r in results]
            name = f"mc_check_{trials}.csv"
            self.run_repository.save_check_table(name, rows)
            failed = [r.name for r in results if not r.passed]
            self._emit_event(
                EventType.RESULT,
                RunStep.MC_CHECK.value,
                f"{len(results) - len(failed)} of {len(results)} checks within tolerance",
                payload={"file": name, "failed": failed},
            )
            self._finish(RunStep.MC_CHECK, started, mark, "completed")
            return results
        except Exception as e:
            logger.error(f"Error in mc-check step for run {self.context.run_id}: {e}", exc_info=True)
            self._handle_error(RunStep.MC_CHECK, str(e), traceback.format_exc())
            self._finish(RunStep.MC_CHECK, started, mark, "failed")
            raise

    # ------------------------------------------------------------------ stages

    def _run_prep(self, experiment: Experiment) -> Tuple[Dataset, Dataset, PreprocessPlan]:
        if experiment.source is None:
            raise ValidationError("The config has no dataset section")
        self._emit_event(EventType.INFO, RunStep.PREP.value, f"Loading {experiment.source.path}")
        prepared = self.preprocess_dataset_uc.execute(
            experiment.source, experiment.circuit.k, experiment.split_ratio, experiment.seed
        )
        self.run_repository.save_prepared(prepared.train, prepared.test, prepared.plan)
        self._emit_event(
            EventType.RESULT,
            RunStep.PREP.value,
            f"Prepared {len(prepared.train)} train / {len(prepared.test)} test rows "
            f"with {prepared.plan.n_components} components",
            payload={
                "rows": prepared.raw_rows,
                "train": len(prepared.train),
                "test": len(prepared.test),
                "explained_variance": prepared.plan.explained_variance.tolist(),
                "zero_variance_features": list(prepared.plan.zero_variance_features),
            },
        )
        return prepared.train, prepared.test, prepared.plan

    def _ensure_prepared(self, experiment: Experiment) -> Tuple[Dataset, Dataset, PreprocessPlan]:
        prepared = self.run_repository.load_prepared()
        if prepared is not None:
            return prepared
        logger.info(f"No preprocessed data in run {self.context.run_id}, running prep first")
        return self._run_prep(experiment)

    def _run_train(self, experiment: Experiment, train: Dataset, variant: ModelVariant, resume: bool) -> TrainedModel:
        previous = self.run_repository.load_model(variant) if resume else None
        if resume and previous is None:
            raise ValidationError(f"Nothing to resume: no stored {variant.value} model in {self.run_repository.location}")

        start_epoch = previous.epochs if previous else 0
        self._emit_event(
            EventType.INFO,
            RunStep.TRAIN.value,
            f"Training {variant.value}" + (f" from epoch {start_epoch}" if previous else ""),
        )
        initial = previous.weights if previous else None
        state = previous.optimizer_state if previous else None

        if variant is ModelVariant.M3:
            config = replace(experiment.train, optimizer=OptimizerKind.SPSA)
            result, optimizer_state = self.train_m3_uc.execute(
                train, experiment.circuit, config, experiment.policy, initial, state, start_epoch
            )
            model = TrainedModel.from_result(
                result, experiment.circuit, config, optimizer_state, start_epoch, experiment.policy
            )
        else:
            config = experiment.train
            result, optimizer_state = self.train_model_uc.execute(
                train, experiment.circuit, config, variant, initial, state, start_epoch
            )
            model = TrainedModel.from_result(result, experiment.circuit, config, optimizer_state, start_epoch)

        if result.diverged:
            # optimizer moments may be non-finite; a resume restarts them
            model.optimizer_state = {}

        name = self.run_repository.save_model(model, result.history)
        self._emit_event(
            EventType.ERROR if result.diverged else EventType.RESULT,
            RunStep.TRAIN.value,
            f"{variant.value}: cost {result.initial_cost:.6f} -> {result.final_cost:.6f} "
            f"in {result.epochs_run - start_epoch} epochs"
            + (" (diverged, last good weights kept)" if result.diverged else ""),
            payload={
                "file": name,
                "epochs": result.epochs_run,
                "executions": result.total_executions,
                "stopped_early": result.stopped_early,
                "diverged": result.diverged,
            },
        )
        return model

    def _ensure_trained(self, experiment: Experiment, train: Dataset, variant: ModelVariant) -> TrainedModel:
        model = self.run_repository.load_model(variant)
        if model is None:
            logger.info(f"No stored {variant.value} model in run {self.context.run_id}, training it first")
            model = self._run_train(experiment, train, variant, resume=False)
        if model.diverged:
            raise NumericError(f"The {variant.value} model diverged during training; refusing to evaluate it")
        return model

    def _run_eval(self, experiment: Experiment) -> List[MetricsReport]:
        train, test, _ = self._ensure_prepared(experiment)
        reports = []
        for model in experiment.models:
            trained = self._ensure_trained(experiment, train, experiment.weights_for(model))
            for noisy in experiment.noise_modes:
                noise = experiment.noise if noisy else None
                label = "noisy" if noisy else "noiseless"
                self._emit_event(EventType.INFO, RunStep.EVAL.value, f"Evaluating {model.value} ({label})")
                evaluation = self.evaluate_model_uc.execute(
                    trained.weights,
                    experiment.circuit,
                    test,
                    model,
                    experiment.shots,
                    experiment.policy,
                    noise,
                    experiment.runs,
                    experiment.seed,
                    experiment.estimator,
                )
                report = evaluation.report
                self.run_repository.save_evaluation(report, evaluation.decisions)
                self._emit_event(
                    EventType.RESULT,
                    RunStep.EVAL.value,
                    f"{model.value} ({label}): ACC {report.accuracy:.4f}, F1 {report.f1:.4f}, "
                    f"avg executions {report.avg_executions:.4f}",
                    payload={
                        "cell": report.cell_name,
                        "backend": report.backend.value,
                        "accuracy": report.accuracy,
                        "avg_executions": report.avg_executions,
                        "saving_factor": report.saving_factor,
                    },
                )
                reports.append(report)
        self.run_repository.save_summary(reports)
        return reports

    # --------------------------------------------------------------- plumbing

    def _event_mark(self) -> int:
        events = self.event_store.get_events(self.context.run_id)
        return events[-1].id if events else 0

    def _emit_event(
        self,
        event_type: EventType,
        step: str,
        message: str,
        payload: Optional[dict] = None
    ) -> None:
        """Emit an event to the event store"""
        event = RunEvent(
            id=0,  # Will be set in the store
            run_id=self.context.run_id,
            timestamp=datetime.now(),
            type=event_type,
            step=step,
            message=message,
            payload=payload
        )
        self.event_store.append_event(self.context.run_id, event)

    def _handle_error(self, step: RunStep, error_msg: str, stack_trace: str) -> None:
        """Handles command errors"""
        try:
            self._emit_event(
                EventType.ERROR,
                step.value,
                f"Error in {step.value}: {error_msg[:200]}",
                payload={"error": error_msg, "stack_trace": stack_trace[:500]}
            )
            logger.error(f"Run {self.context.run_id} failed at step {step.value}")
        except Exception as e:
            logger.error(f"Error handling error for run {self.context.run_id}: {e}", exc_info=True)

    def _finish(self, step: RunStep, started: datetime, mark: int, status: str) -> None:
        """Append this command to the manifest history and rewrite the manifest."""
        try:
            manifest = self.run_repository.load_manifest() or {}
            commands = manifest.get("commands", [])
            commands.append({
                "command": step.value,
                "status": status,
                "started_at": started.isoformat(),
                "finished_at": datetime.now().isoformat(),
                "events": [e.to_dict() for e in self.event_store.get_events(self.context.run_id, mark)],
            })
            self.run_repository.save_manifest({
                "run_id": self.context.run_id,
                "config_hash": self.context.config_hash,
                "config": self.context.config,
                "seeds": {
                    "master": self.context.config.get("seed"),
                    "train": self.context.config.get("train", {}).get("seed"),
                },
                "versions": self.context.versions,
                "commands": commands,
            })
        except Exception as e:
            logger.error(f"Could not write the manifest of run {self.context.run_id}: {e}", exc_info=True)
