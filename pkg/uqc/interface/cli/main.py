"""Command-line front-end.

    python -m uqc.interface.cli.main prep|train|eval|theory|mc-check --config <file> [--seed N] [--out DIR]

Exit codes: 0 success, 1 unexpected failure, 2 validation error, 3 numeric
failure (including mc-check results outside tolerance).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ...dependencies import get_experiment_runner
from ...domain.decision.entities.decision import ModelVariant
from ...domain.shared.errors import NumericError, UQCError, ValidationError
from ...infrastructure.shared.config.experiment_config import load_experiment_config
from ...infrastructure.shared.config.settings import get_settings
from ...infrastructure.shared.mappers.experiment_mapper import ExperimentMapper

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def _count(value: str) -> int:
    """Non-negative integer, also written as 1e5."""
    try:
        number = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}")
    if number < 0 or number != int(number):
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value!r}")
    return int(number)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uqc",
        description="Unambiguous quantum classifier: simulation, training, evaluation and shot-overhead theory.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Experiment config JSON (defaults apply to missing fields)")
    common.add_argument("--seed", type=_count, help="Override the master seed")
    common.add_argument("--out", type=Path, help="Output root (default: UQC_OUTPUT_ROOT or ./runs)")

    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("prep", parents=[common], help="Load, split and preprocess the dataset")

    train = commands.add_parser("train", parents=[common], help="Train classifier weights")
    train.add_argument(
        "--model",
        action="append",
        choices=[m.value for m in ModelVariant],
        help="Variant to train (repeatable; default: train_models from the config)",
    )
    train.add_argument("--optimizer", choices=["adam", "spsa"], help="Override train.optimizer")
    train.add_argument("--resume", action="store_true", help="Continue from the stored model after a checksum check")

    commands.add_parser("eval", parents=[common], help="Evaluate every model x noise cell")

    theory = commands.add_parser("theory", parents=[common], help="Tabulate the closed forms")
    theory.add_argument("--mc-trials", type=_count, help="Append Monte Carlo columns with this many trials")

    check = commands.add_parser("mc-check", parents=[common], help="Cross-check closed forms against the simulator")
    check.add_argument("--trials", type=_count, default=100_000, help="Monte Carlo trials per check (default 1e5)")
    return parser


def run_command(args: argparse.Namespace) -> int:
    settings = get_settings()
    overrides = {"seed": args.seed, "train.optimizer": getattr(args, "optimizer", None)}
    config = load_experiment_config(args.config, overrides, default_seed=settings.run.default_seed)
    experiment = ExperimentMapper.to_domain(config)
    runner = get_experiment_runner(config, args.out)
    location = runner.run_repository.location

    if args.command == "prep":
        train, test, plan = runner.run_prep(experiment)
        print(f"{location}: {len(train)} train / {len(test)} test rows, {plan.n_components} components")
    elif args.command == "train":
        variants = [ModelVariant(m) for m in args.model] if args.model else None
        for model in runner.run_train(experiment, variants, resume=args.resume):
            print(f"{location}: {model.variant.value} trained to epoch {model.epochs}")
    elif args.command == "eval":
        for report in runner.run_eval(experiment):
            print(
                f"{report.model.value.upper():3s} {report.n_qubits} {report.noise_label:10s} "
                f"exec {report.avg_executions:10.4f}  ACC {report.accuracy:.4f}  PRE {report.precision:.4f}  "
                f"REC {report.recall:.4f}  F1 {report.f1:.4f}  AUC {report.roc_auc:.4f}"
            )
        print(f"Reports written to {location}")
    elif args.command == "theory":
        rows = runner.run_theory(experiment, args.mc_trials)
        print(f"{location}: {len(rows)} theory rows")
    elif args.command == "mc-check":
        results = runner.run_mc_check(experiment, args.trials)
        failed = [r for r in results if not r.passed]
        for r in failed:
            print(f"OUTSIDE TOLERANCE {r.name}: expected {r.expected:.6g}, observed {r.observed:.6g} +- {r.stderr:.2g}")
        print(f"{location}: {len(results) - len(failed)}/{len(results)} checks passed")
        if failed:
            return EXIT_NUMERIC
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.logging.level),
        format=settings.logging.format,
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    try:
        return run_command(args)
    except NumericError as e:
        logger.error(f"Numeric failure: {e}")
        return EXIT_NUMERIC
    except ValidationError as e:
        logger.error(f"Validation error: {e}")
        return EXIT_VALIDATION
    except UQCError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_VALIDATION
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
