from pathlib import Path
from typing import Sequence, Union

import numpy as np
import pandas as pd

from nonface.models.features import CompactionMethod, FeatureVector, ScalingParams
from nonface.models.image import GrayImage, LabeledImage
from nonface.models.transform import DctBlock
from nonface.services.transform_service import TransformService
from nonface.utils.logging_config import get_logger

logger = get_logger(__name__)

VectorLike = Union[FeatureVector, np.ndarray, Sequence[float]]


def _as_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        matrix = np.asarray(vectors, dtype=np.float64)
        return matrix if matrix.ndim == 2 else matrix.reshape(1, -1)
    rows = [v.values if isinstance(v, FeatureVector) else np.asarray(v, dtype=np.float64) for v in vectors]
    if not rows:
        raise ValueError("no feature vectors given")
    lengths = {row.size for row in rows}
    if len(lengths) != 1:
        raise ValueError(f"feature vectors have mismatched lengths {sorted(lengths)}")
    return np.vstack(rows)


class FeatureService:
    @staticmethod
    def compact_coefficients(method: CompactionMethod, coeffs: np.ndarray) -> np.ndarray:
        """
        Block-level coefficient λ for every block in a stack

        coeffs has shape (..., n²) in raster-scan order. The DC term at index 0 is
        always skipped; sums run over the n² - 1 AC coefficients.
        """
        method = CompactionMethod(method)
        coeffs = np.asarray(coeffs, dtype=np.float64)
        ac = coeffs[..., 1:]
        count = ac.shape[-1]
        if count < 1:
            raise ValueError("block has no AC coefficients")

        if method in (CompactionMethod.M1, CompactionMethod.M3):
            total = np.sum(ac * ac, axis=-1)
            return total if method is CompactionMethod.M1 else total / count
        if method in (CompactionMethod.M2, CompactionMethod.M4):
            total = np.sum(np.abs(ac), axis=-1)
            return total if method is CompactionMethod.M2 else total / count

        mu = np.sum(ac, axis=-1, keepdims=True) / count
        return np.sum(np.abs(ac - mu), axis=-1) / count

    @staticmethod
    def compact(method: CompactionMethod, block: DctBlock) -> float:
        """λ of a single DCT block"""
        return float(FeatureService.compact_coefficients(method, block.coeffs))

    @staticmethod
    def _fit_geometry(image: GrayImage, n: int, coefficients: str) -> GrayImage:
        if coefficients == "padded":
            return TransformService.zero_pad(image, n)
        if coefficients == "cropped":
            return TransformService.crop_to_blocks(image, n)
        raise ValueError(f"unknown coefficient geometry {coefficients!r}")

    @staticmethod
    def num_coefficients(width: int, height: int, n: int, coefficients: str = "padded") -> int:
        """Feature dimension M produced for a width x height image"""
        if coefficients == "cropped":
            return (width // n) * (height // n)
        return -(-width // n) * -(-height // n)

    @staticmethod
    def extract_features(
        image: GrayImage,
        n: int,
        method: CompactionMethod,
        coefficients: str = "padded",
    ) -> FeatureVector:
        """Pad (or crop), partition, transform and compact one image"""
        method = CompactionMethod(method)
        grid = TransformService.partition_blocks(FeatureService._fit_geometry(image, n, coefficients), n)
        coeffs = TransformService.dct_blocks(grid.tiles()).reshape(grid.count, n * n)
        values = FeatureService.compact_coefficients(method, coeffs)
        return FeatureVector(values=values, method=method, block_size=n)

    @staticmethod
    def feature_matrix(
        images: Sequence[Union[GrayImage, LabeledImage]],
        n: int,
        method: CompactionMethod,
        coefficients: str = "padded",
    ) -> np.ndarray:
        """Stack feature vectors of many images row-wise, transforming all blocks in one pass"""
        method = CompactionMethod(method)
        if not images:
            raise ValueError("no images given")
        tiles = []
        for item in images:
            image = item.image if isinstance(item, LabeledImage) else item
            grid = TransformService.partition_blocks(FeatureService._fit_geometry(image, n, coefficients), n)
            tiles.append(grid.tiles())
        per_image = {t.shape[0] for t in tiles}
        if len(per_image) != 1:
            raise ValueError("images yield different block counts; dimensions must agree")
        stack = np.stack(tiles)
        coeffs = TransformService.dct_blocks(stack).reshape(stack.shape[0], stack.shape[1], n * n)
        matrix = FeatureService.compact_coefficients(method, coeffs)
        logger.debug(
            f"[cyan]🔍[/cyan] Extracted {matrix.shape[0]} x {matrix.shape[1]} features "
            f"({method.label}, {n}x{n}, {coefficients})"
        )
        return matrix

    @staticmethod
    def fit_scaling(train_vectors) -> ScalingParams:
        """Per-dimension min and max over training vectors only"""
        matrix = _as_matrix(train_vectors)
        if matrix.shape[0] == 0:
            raise ValueError("no feature vectors given")
        return ScalingParams(mins=matrix.min(axis=0), maxs=matrix.max(axis=0))

    @staticmethod
    def apply_scaling(vectors, params: ScalingParams) -> np.ndarray:
        """
        Min-max scale into [0, 1] and clamp

        Accepts one vector or a matrix of row vectors. Dimensions whose training
        range is empty map to 0.
        """
        if isinstance(vectors, FeatureVector):
            single = True
        elif isinstance(vectors, np.ndarray):
            single = vectors.ndim == 1
        else:
            single = len(vectors) > 0 and np.isscalar(vectors[0])
        matrix = _as_matrix([vectors] if single else vectors)
        if matrix.shape[1] != params.dim:
            raise ValueError(f"feature dimension {matrix.shape[1]} does not match scaling dimension {params.dim}")

        span = params.maxs - params.mins
        degenerate = span == 0
        safe_span = np.where(degenerate, 1.0, span)
        scaled = np.clip((matrix - params.mins) / safe_span, 0.0, 1.0)
        scaled[:, degenerate] = 0.0
        return scaled[0] if single else scaled

    @staticmethod
    def write_features_csv(items: Sequence[LabeledImage], matrix: np.ndarray, path: Union[str, Path]) -> None:
        """One row per image: subject_id,sample_index,f_1,...,f_M at full precision"""
        if len(items) != matrix.shape[0]:
            raise ValueError("row count does not match number of images")
        frame = pd.DataFrame(matrix, columns=[f"f_{j + 1}" for j in range(matrix.shape[1])])
        frame.insert(0, "sample_index", [item.sample_index for item in items])
        frame.insert(0, "subject_id", [item.subject_id for item in items])
        frame.to_csv(path, index=False, lineterminator="\n")
        logger.info(f"[bold green]✓[/bold green] Wrote {len(items)} feature rows to [cyan]{path}[/cyan]")
