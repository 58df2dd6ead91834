import argparse

from nonface.commands import EXIT_OK, add_dataset_root, handle_errors
from nonface.config import settings
from nonface.services.classifier_service import ClassifierService
from nonface.services.dataset_service import DatasetService
from nonface.services.experiment_service import ExperimentService
from nonface.services.feature_service import FeatureService
from nonface.utils.logging_config import console, get_logger

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="score a saved model on the test split")
    add_dataset_root(parser)
    parser.add_argument("--model", required=True, help="model JSON written by train")
    parser.set_defaults(func=cmd_eval)


@handle_errors
def cmd_eval(args: argparse.Namespace) -> int:
    """Re-extract test features with the model's own settings and report its error"""
    root = settings.resolve_root(args.dataset_root)
    mlp, scaling, record = ClassifierService.load_model(args.model)
    dataset = DatasetService.load_orl(root)
    if dataset.num_subjects != mlp.output_dim:
        raise ValueError(
            f"model classifies {mlp.output_dim} subjects but the dataset has {dataset.num_subjects}"
        )

    _, test = DatasetService.split_train_test(dataset, record.train_per_subject)
    matrix = FeatureService.feature_matrix(test, record.block_size, record.method, record.coefficients)
    predictions = ClassifierService.predict(mlp, FeatureService.apply_scaling(matrix, scaling))
    labels = [item.subject_id for item in test]
    error = ExperimentService.error_rate(predictions, labels)

    for item, predicted in zip(test, predictions):
        if predicted != item.subject_id:
            # Subjects and samples are shown 1-based, matching the directory names
            console.print(
                f"[yellow]✗[/yellow] s{item.subject_id + 1}/{item.sample_index + 1}.pgm "
                f"recognised as s{int(predicted) + 1}"
            )
    console.print(f"test error: {error:.1f}% ({len(test)} images)")
    return EXIT_OK
