"""
Mapper to convert ExperimentConfig (Pydantic) to Experiment (Domain Entity).
"""
from ....domain.decision.entities.decision import Estimator, FallbackPolicy, ModelVariant, ThresholdPolicy
from ....domain.noise.entities.channel import NoiseSpec
from ....domain.pipeline.entities.dataset import DatasetSource
from ....domain.pipeline.entities.experiment import Experiment, TheorySweep
from ....domain.pipeline.entities.training import AdamConfig, OptimizerKind, SPSAConfig, TrainConfig
from ....domain.vqc.entities.model import CircuitSpec
from ..config.experiment_config import ExperimentConfig


class ExperimentMapper:
    """Maps ExperimentConfig (Pydantic) to Experiment (Domain)"""

    @staticmethod
    def to_domain(config: ExperimentConfig) -> Experiment:
        """Convert the validated config to domain objects; domain rules may still raise ValidationError"""
        source = None
        if config.dataset is not None:
            source = DatasetSource(
                path=config.dataset.path,
                label_column=config.dataset.label_column,
                label_map=dict(config.dataset.label_map) if config.dataset.label_map else None,
                drop_columns=tuple(config.dataset.drop_columns),
            )

        train = config.train
        noise = NoiseSpec.from_pairs((c.kind, c.parameter) for c in config.noise.channels)
        if config.noise.scale != 1.0:
            noise = noise.scaled(config.noise.scale)

        return Experiment(
            source=source,
            circuit=CircuitSpec(config.circuit.qubits, config.circuit.l_fm, config.circuit.l_a),
            train=TrainConfig(
                optimizer=OptimizerKind(train.optimizer),
                adam=AdamConfig(**train.adam.model_dump()),
                spsa=SPSAConfig(**train.spsa.model_dump()),
                batch_size=train.batch_size,
                max_epochs=train.max_epochs,
                patience=train.patience,
                min_delta=train.min_delta,
                seed=train.seed,
                log_every=train.log_every,
            ),
            policy=ThresholdPolicy(
                l=config.policy.l,
                t_c=config.policy.t_c,
                fallback=FallbackPolicy(config.policy.fallback),
            ),
            noise=noise,
            models=tuple(ModelVariant(m) for m in config.models),
            train_models=tuple(ModelVariant(m) for m in config.train_models),
            noise_modes=tuple(mode == "noisy" for mode in config.noise_modes),
            shots=config.shots,
            runs=config.runs,
            split_ratio=config.dataset.split_ratio if config.dataset else 0.8,
            estimator=Estimator(config.estimator),
            m3_weights=ModelVariant(config.m3_weights),
            seed=config.seed,
            theory=TheorySweep(
                n_qubits=tuple(config.theory.n_qubits),
                deltas=tuple(config.theory.deltas),
                eps=tuple(config.theory.eps),
                thresholds=tuple(config.theory.thresholds),
                shots=tuple(config.theory.shots),
                mc_trials=config.theory.mc_trials,
            ),
        )
