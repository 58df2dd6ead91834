import argparse

from nonface.commands import (
    EXIT_OK,
    add_dataset_root,
    add_feature_options,
    handle_errors,
    positive_int,
    seed_arg,
)
from nonface.config import settings
from nonface.schemas.experiment import ExperimentConfig
from nonface.schemas.training import TrainConfig
from nonface.services.classifier_service import ClassifierService
from nonface.services.dataset_service import DatasetService
from nonface.services.experiment_service import ExperimentService
from nonface.utils.logging_config import console, get_logger

logger = get_logger(__name__)


def add_training_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epochs", type=positive_int, default=None, help="maximum epochs (default: 300)")
    parser.add_argument("--learning-rate", type=float, default=None)
    parser.add_argument("--momentum", type=float, default=None)
    parser.add_argument("--target-mse", type=float, default=None)
    parser.add_argument("--soft-targets", action="store_true", default=None,
                        help="train towards 0.1/0.9 instead of 0/1")


def train_config_from_args(args: argparse.Namespace) -> TrainConfig:
    return TrainConfig.from_settings(
        max_epochs=args.epochs,
        learning_rate=args.learning_rate,
        momentum=args.momentum,
        target_mse=args.target_mse,
        soft_targets=args.soft_targets,
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("train", help="train one network on the fixed train/test split")
    add_dataset_root(parser)
    add_feature_options(parser)
    parser.add_argument("--hidden", type=positive_int, default=60, help="hidden neurons")
    parser.add_argument("--seed", type=seed_arg, default=1, help="weight/shuffle seed")
    parser.add_argument("--model-out", required=True, help="where to write the model JSON")
    add_training_options(parser)
    parser.set_defaults(func=cmd_train)


@handle_errors
def cmd_train(args: argparse.Namespace) -> int:
    """Train a single network and save it"""
    root = settings.resolve_root(args.dataset_root)
    cfg = ExperimentConfig(
        method=args.method,
        block_size=args.block_size,
        hidden_dim=args.hidden,
        runs=1,
        train_cfg=train_config_from_args(args),
        base_seed=args.seed,
        coefficients=args.coefficients or settings.coefficients,
        train_per_subject=settings.train_per_subject,
    )
    dataset = DatasetService.load_orl(root)

    split = ExperimentService.prepare_split(dataset, cfg)
    outcome = ExperimentService.run_once(split, cfg, run=0)
    ClassifierService.save_model(
        args.model_out,
        outcome.mlp,
        cfg.method,
        cfg.block_size,
        split.scaling,
        coefficients=cfg.coefficients,
        soft_targets=cfg.train_cfg.soft_targets,
        train_per_subject=cfg.train_per_subject,
    )

    console.print(f"train mse: {outcome.history[-1]:.6f} after {len(outcome.history)} epochs")
    console.print(f"test error: {outcome.error_pct:.1f}%")
    return EXIT_OK
