import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from rich.progress import Progress

from nonface import __version__
from nonface.models.classifier import MlpClassifier
from nonface.models.features import CompactionMethod, ScalingParams
from nonface.models.image import Dataset
from nonface.schemas.experiment import (
    ExperimentConfig,
    ExperimentManifest,
    FailedRun,
    ManifestEntry,
    RunResult,
)
from nonface.schemas.training import TrainConfig
from nonface.services.classifier_service import ClassifierService, DivergenceError
from nonface.services.dataset_service import DatasetService
from nonface.services.feature_service import FeatureService
from nonface.utils.logging_config import console, get_logger

logger = get_logger(__name__)

DEFAULT_BLOCK_SIZES = (8, 16, 32)
DEFAULT_HIDDEN = (15, 25, 45, 60)
TABLE_COLUMNS = ["Method", "NxN", "No. of Coefficients", "No. of Hidden", "Avg. Error (%)", "Min Error (%)"]
CSV_COLUMNS = [
    "method", "block_size", "num_coefficients", "num_hidden",
    "run_errors", "avg_error_pct", "min_error_pct", "global_min",
]
MIN_MARK = "†"


class PreparedSplit(NamedTuple):
    """Scaled train/test features of one (method, block size, geometry) choice"""
    train_inputs: np.ndarray
    train_targets: np.ndarray
    test_inputs: np.ndarray
    test_labels: np.ndarray
    scaling: ScalingParams
    num_classes: int


class SingleRun(NamedTuple):
    mlp: MlpClassifier
    history: List[float]
    error_pct: float


_worker_dataset: Optional[Dataset] = None


def _init_worker(dataset: Dataset) -> None:
    global _worker_dataset
    _worker_dataset = dataset


def _grid_worker(cfg: ExperimentConfig) -> Tuple[RunResult, float]:
    return ExperimentService.run_config_timed(_worker_dataset, cfg)


def _fmt(value: Optional[float]) -> str:
    return "n/a" if value is None else f"{value:.1f}"


class ExperimentService:
    @staticmethod
    def error_rate(predictions: Sequence[int], labels: Sequence[int]) -> float:
        """Percentage of predictions that miss their label"""
        predictions = np.asarray(predictions)
        labels = np.asarray(labels)
        if predictions.size == 0:
            raise ValueError("no predictions given")
        if predictions.shape != labels.shape:
            raise ValueError(f"{predictions.size} predictions for {labels.size} labels")
        return 100.0 * int(np.count_nonzero(predictions != labels)) / predictions.size

    @staticmethod
    def default_grid(
        base_seed: int = 42,
        runs: int = 5,
        train_cfg: Optional[TrainConfig] = None,
        coefficients: str = "padded",
        train_per_subject: int = 5,
    ) -> List[ExperimentConfig]:
        """The 60 table configurations: method, then block size, then hidden count"""
        train_cfg = train_cfg or TrainConfig()
        return [
            ExperimentConfig(
                method=method,
                block_size=n,
                hidden_dim=hidden,
                runs=runs,
                train_cfg=train_cfg,
                base_seed=base_seed,
                coefficients=coefficients,
                train_per_subject=train_per_subject,
            )
            for method in CompactionMethod
            for n in DEFAULT_BLOCK_SIZES
            for hidden in DEFAULT_HIDDEN
        ]

    @staticmethod
    def prepare_split(dataset: Dataset, cfg: ExperimentConfig) -> PreparedSplit:
        """
        Split, extract and scale features for one configuration

        Scaling is fitted on the training rows alone and then applied to both sides.
        """
        train, test = DatasetService.split_train_test(dataset, cfg.train_per_subject)
        train_matrix = FeatureService.feature_matrix(train, cfg.block_size, cfg.method, cfg.coefficients)
        test_matrix = FeatureService.feature_matrix(test, cfg.block_size, cfg.method, cfg.coefficients)
        scaling = FeatureService.fit_scaling(train_matrix)
        return PreparedSplit(
            train_inputs=FeatureService.apply_scaling(train_matrix, scaling),
            train_targets=ClassifierService.one_hot(
                [item.subject_id for item in train], dataset.num_subjects, cfg.train_cfg.soft_targets
            ),
            test_inputs=FeatureService.apply_scaling(test_matrix, scaling),
            test_labels=np.array([item.subject_id for item in test]),
            scaling=scaling,
            num_classes=dataset.num_subjects,
        )

    @staticmethod
    def run_once(split: PreparedSplit, cfg: ExperimentConfig, run: int) -> SingleRun:
        """Initialise, train and test one network; raises DivergenceError"""
        seed = cfg.seed_for(run)
        mlp = ClassifierService.init_mlp(
            split.train_inputs.shape[1], cfg.hidden_dim, split.num_classes, seed
        )
        train_cfg = cfg.train_cfg.model_copy(update={"seed": seed})
        samples = list(zip(split.train_inputs, split.train_targets))
        trained, history = ClassifierService.train(mlp, samples, train_cfg)
        predictions = ClassifierService.predict(trained, split.test_inputs)
        return SingleRun(
            mlp=trained,
            history=history,
            error_pct=ExperimentService.error_rate(predictions, split.test_labels),
        )

    @staticmethod
    def run_config(dataset: Dataset, cfg: ExperimentConfig) -> RunResult:
        """All seeded runs of one configuration, aggregated into average and minimum error"""
        split = ExperimentService.prepare_split(dataset, cfg)
        label = f"{cfg.method.label} {cfg.block_size}x{cfg.block_size} hidden={cfg.hidden_dim}"

        seeds, errors, final_mse, epochs_run = [], [], [], []
        failed: List[FailedRun] = []
        warnings: List[str] = []
        for run in range(cfg.runs):
            seed = cfg.seed_for(run)
            try:
                outcome = ExperimentService.run_once(split, cfg, run)
            except DivergenceError as e:
                message = f"run {run} (seed {seed}) diverged at epoch {e.epoch}; excluded from aggregates"
                logger.warning(f"[yellow]⚠[/yellow] {label}: {message}")
                failed.append(FailedRun(run=run, seed=seed, epoch=e.epoch, message=str(e)))
                warnings.append(message)
                continue
            seeds.append(seed)
            errors.append(outcome.error_pct)
            final_mse.append(outcome.history[-1])
            epochs_run.append(len(outcome.history))
            logger.debug(
                f"[cyan]🧪[/cyan] {label} run {run}: error {outcome.error_pct:.1f}% "
                f"after {len(outcome.history)} epochs"
            )

        if not errors:
            warnings.append("every run diverged; no aggregate error available")
        result = RunResult(
            config=cfg,
            num_coefficients=int(split.train_inputs.shape[1]),
            seeds=seeds,
            per_run_error_pct=errors,
            final_mse=final_mse,
            epochs_run=epochs_run,
            failed_runs=failed,
            warnings=warnings,
            avg_error_pct=float(np.mean(errors)) if errors else None,
            min_error_pct=float(np.min(errors)) if errors else None,
        )
        logger.info(
            f"[bold green]✓[/bold green] {label}: avg {_fmt(result.avg_error_pct)}%, "
            f"min {_fmt(result.min_error_pct)}%"
        )
        return result

    @staticmethod
    def run_config_timed(dataset: Dataset, cfg: ExperimentConfig) -> Tuple[RunResult, float]:
        """run_config plus wall-clock seconds; failures become a result carrying the error"""
        started = time.perf_counter()
        try:
            result = ExperimentService.run_config(dataset, cfg)
        except Exception as e:
            logger.error(f"[bold red]✗[/bold red] Configuration failed: [red]{e}[/red]")
            result = RunResult(config=cfg, num_coefficients=0, warnings=[f"configuration failed: {e}"])
        return result, time.perf_counter() - started

    @staticmethod
    def run_grid_timed(
        dataset: Dataset,
        grid: Sequence[ExperimentConfig],
        jobs: int = 1,
        show_progress: bool = False,
    ) -> List[Tuple[RunResult, float]]:
        """Run every configuration; output follows grid order whatever the completion order"""
        if not grid:
            raise ValueError("experiment grid is empty")
        logger.info(f"[cyan]🚀 Running {len(grid)} configurations with {jobs} job(s)...[/cyan]")

        with Progress(console=console, disable=not show_progress, transient=True) as progress:
            task = progress.add_task("configurations", total=len(grid))
            if jobs > 1:
                with ProcessPoolExecutor(
                    max_workers=jobs, initializer=_init_worker, initargs=(dataset,)
                ) as pool:
                    timed = []
                    for item in pool.map(_grid_worker, grid):
                        timed.append(item)
                        progress.advance(task)
            else:
                timed = []
                for cfg in grid:
                    timed.append(ExperimentService.run_config_timed(dataset, cfg))
                    progress.advance(task)
        return timed

    @staticmethod
    def run_grid(dataset: Dataset, grid: Sequence[ExperimentConfig], jobs: int = 1) -> List[RunResult]:
        """One RunResult per configuration, in grid order"""
        return [result for result, _ in ExperimentService.run_grid_timed(dataset, grid, jobs)]

    @staticmethod
    def global_min_error(results: Sequence[RunResult]) -> Optional[float]:
        values = [r.min_error_pct for r in results if r.min_error_pct is not None]
        return min(values) if values else None

    @staticmethod
    def best_by_method(results: Sequence[RunResult]) -> Dict[CompactionMethod, Dict[str, RunResult]]:
        """Per method, the configuration with the lowest average and the one with the lowest single-run error"""
        best: Dict[CompactionMethod, Dict[str, RunResult]] = {}
        for result in results:
            if not result.succeeded:
                continue
            entry = best.setdefault(result.config.method, {"min_avg": result, "min_error": result})
            if result.avg_error_pct < entry["min_avg"].avg_error_pct:
                entry["min_avg"] = result
            if result.min_error_pct < entry["min_error"].min_error_pct:
                entry["min_error"] = result
        return best

    @staticmethod
    def _is_global_min(result: RunResult, global_min: Optional[float]) -> bool:
        return global_min is not None and result.min_error_pct == global_min

    @staticmethod
    def _row(result: RunResult, global_min: Optional[float], best: Dict[str, RunResult]) -> List[str]:
        cfg = result.config
        avg_cell = _fmt(result.avg_error_pct)
        min_cell = _fmt(result.min_error_pct)
        if best.get("min_avg") is result:
            avg_cell = f"**{avg_cell}**"
        if best.get("min_error") is result:
            min_cell = f"**{min_cell}**"
        if ExperimentService._is_global_min(result, global_min):
            min_cell = f"{min_cell} {MIN_MARK}"
        return [
            cfg.method.label,
            f"{cfg.block_size}x{cfg.block_size}",
            str(result.num_coefficients),
            str(cfg.hidden_dim),
            avg_cell,
            min_cell,
        ]

    @staticmethod
    def render_table(results: Sequence[RunResult], fmt: str = "markdown") -> str:
        """
        Render results as CSV or as one Markdown table per method

        Markdown bolds the lowest average and the lowest minimum of each method
        and marks every row reaching the global minimum error with †. CSV keeps
        numeric columns clean; the global minimum goes in its own boolean column.
        """
        if not results:
            raise ValueError("no results to render")
        global_min = ExperimentService.global_min_error(results)
        if fmt == "csv":
            frame = pd.DataFrame(
                [
                    [
                        r.config.method.label,
                        r.config.block_size,
                        r.num_coefficients,
                        r.config.hidden_dim,
                        ";".join(repr(e) for e in r.per_run_error_pct),
                        _fmt(r.avg_error_pct),
                        _fmt(r.min_error_pct),
                        ExperimentService._is_global_min(r, global_min),
                    ]
                    for r in results
                ],
                columns=CSV_COLUMNS,
            )
            return frame.to_csv(index=False, lineterminator="\n")
        if fmt != "markdown":
            raise ValueError(f"unknown table format {fmt!r}")

        best = ExperimentService.best_by_method(results)
        groups: Dict[CompactionMethod, List[RunResult]] = {}
        for result in results:
            groups.setdefault(result.config.method, []).append(result)

        lines: List[str] = []
        for method, rows in groups.items():
            lines.append(f"### Method {method.label}")
            lines.append("")
            lines.append("| " + " | ".join(TABLE_COLUMNS) + " |")
            lines.append("|" + "|".join("---" for _ in TABLE_COLUMNS) + "|")
            for result in rows:
                cells = ExperimentService._row(result, global_min, best.get(method, {}))
                lines.append("| " + " | ".join(cells) + " |")
            lines.append("")
        if best:
            lines.append("Bold average: lowest average error of the method. "
                         "Bold minimum: lowest single-run error of the method.")
            lines.append("")
        if global_min is not None:
            lines.append(f"{MIN_MARK} Denotes minimum error over all methods and network configurations.")
            lines.append("")
        return "\n".join(lines)

    @staticmethod
    def build_manifest(
        timed: Sequence[Tuple[RunResult, float]],
        base_seed: int,
        elapsed_s: float,
    ) -> ExperimentManifest:
        """Audit record of a grid run"""
        return ExperimentManifest(
            version=__version__,
            created_at=datetime.now(timezone.utc),
            base_seed=base_seed,
            elapsed_s=elapsed_s,
            entries=[ManifestEntry(result=result, elapsed_s=seconds) for result, seconds in timed],
        )

