import argparse
import time
from pathlib import Path

from nonface.commands import EXIT_OK, add_dataset_root, handle_errors, positive_int, seed_arg
from nonface.commands.train import add_training_options, train_config_from_args
from nonface.config import settings
from nonface.services.dataset_service import DatasetService
from nonface.services.experiment_service import ExperimentService
from nonface.utils.logging_config import console, get_logger

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("reproduce", help="run the full 60-configuration grid and render tables")
    add_dataset_root(parser)
    parser.add_argument("--base-seed", type=seed_arg, default=None, help="run r uses base seed + r")
    parser.add_argument("--format", choices=["csv", "markdown"], default="markdown")
    parser.add_argument("--out", required=True, help="rendered table path")
    parser.add_argument("--manifest", default=None,
                        help="JSON manifest path (default: <out stem>.manifest.json)")
    parser.add_argument("--runs", type=positive_int, default=None, help="runs per configuration")
    parser.add_argument("--jobs", type=positive_int, default=None, help="configurations run in parallel")
    parser.add_argument("--coefficients", choices=["padded", "cropped"], default=None)
    add_training_options(parser)
    parser.set_defaults(func=cmd_reproduce)


@handle_errors
def cmd_reproduce(args: argparse.Namespace) -> int:
    """Run the default grid, write tables and the manifest, print the best configuration"""
    root = settings.resolve_root(args.dataset_root)
    base_seed = settings.base_seed if args.base_seed is None else args.base_seed
    grid = ExperimentService.default_grid(
        base_seed=base_seed,
        runs=args.runs or settings.runs,
        train_cfg=train_config_from_args(args),
        coefficients=args.coefficients or settings.coefficients,
        train_per_subject=settings.train_per_subject,
    )
    dataset = DatasetService.load_orl(root)

    started = time.perf_counter()
    timed = ExperimentService.run_grid_timed(
        dataset, grid, jobs=args.jobs or settings.jobs, show_progress=True
    )
    elapsed = time.perf_counter() - started
    results = [result for result, _ in timed]

    out = Path(args.out)
    out.write_text(ExperimentService.render_table(results, args.format), encoding="utf-8")
    manifest_path = Path(args.manifest) if args.manifest else out.with_name(f"{out.stem}.manifest.json")
    manifest = ExperimentService.build_manifest(timed, base_seed, elapsed)
    manifest_path.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"[bold green]✓[/bold green] Tables written to [cyan]{out}[/cyan], manifest to [cyan]{manifest_path}[/cyan]")

    for result in results:
        for warning in result.warnings:
            console.print(f"[yellow]⚠[/yellow] {result.config.method.label} "
                          f"{result.config.block_size}x{result.config.block_size} "
                          f"hidden={result.config.hidden_dim}: {warning}")

    for method, best in ExperimentService.best_by_method(results).items():
        low_avg, low_min = best["min_avg"].config, best["min_error"].config
        console.print(
            f"{method.label}: lowest average {best['min_avg'].avg_error_pct:.1f}% "
            f"({low_avg.block_size}x{low_avg.block_size} hidden={low_avg.hidden_dim}), "
            f"lowest minimum {best['min_error'].min_error_pct:.1f}% "
            f"({low_min.block_size}x{low_min.block_size} hidden={low_min.hidden_dim})"
        )

    global_min = ExperimentService.global_min_error(results)
    for result in results:
        if global_min is not None and result.min_error_pct == global_min:
            cfg = result.config
            console.print(
                f"[bold]best:[/bold] {cfg.method.label} {cfg.block_size}x{cfg.block_size} "
                f"hidden={cfg.hidden_dim} avg {result.avg_error_pct:.1f}% min {result.min_error_pct:.1f}% †"
            )
    return EXIT_OK
