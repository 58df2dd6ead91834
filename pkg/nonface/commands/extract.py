import argparse

from nonface.commands import EXIT_OK, add_dataset_root, add_feature_options, handle_errors
from nonface.config import settings
from nonface.services.dataset_service import DatasetService
from nonface.services.feature_service import FeatureService
from nonface.utils.logging_config import console, get_logger

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("extract", help="write Level 1 feature vectors of every image as CSV")
    add_dataset_root(parser)
    add_feature_options(parser)
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.set_defaults(func=cmd_extract)


@handle_errors
def cmd_extract(args: argparse.Namespace) -> int:
    """Extract features of all images and export them"""
    root = settings.resolve_root(args.dataset_root)
    coefficients = args.coefficients or settings.coefficients
    dataset = DatasetService.load_orl(root)

    matrix = FeatureService.feature_matrix(dataset.images, args.block_size, args.method, coefficients)
    FeatureService.write_features_csv(dataset.images, matrix, args.out)

    console.print(
        f"[bold green]✓[/bold green] {matrix.shape[0]} rows x {matrix.shape[1]} features "
        f"({args.method.upper()}, {args.block_size}x{args.block_size}) → {args.out}"
    )
    return EXIT_OK
