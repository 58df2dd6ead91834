from nonface.models.image import GrayImage, LabeledImage, Dataset
from nonface.models.transform import BlockSize, DctBlock, BlockGrid, check_block_size
from nonface.models.features import CompactionMethod, FeatureVector, ScalingParams
from nonface.models.classifier import MlpClassifier

__all__ = [
    "GrayImage", "LabeledImage", "Dataset",
    "BlockSize", "DctBlock", "BlockGrid", "check_block_size",
    "CompactionMethod", "FeatureVector", "ScalingParams",
    "MlpClassifier",
]
