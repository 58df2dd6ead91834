from typing import List

from pydantic import BaseModel, Field

from nonface.models.features import CompactionMethod
from nonface.models.transform import BlockSize
from nonface.schemas.experiment import Geometry


class ModelFile(BaseModel):
    """
    On-disk form of a trained recognizer

    Weights are stored row-major as nested lists of doubles; JSON floats use the
    shortest round-trip representation so loading reproduces every bit.
    """
    format: str = "nonface-mlp/1"
    input_dim: int = Field(ge=1)
    hidden_dim: int = Field(ge=1)
    output_dim: int = Field(ge=1)
    seed: int = Field(ge=0)
    method: CompactionMethod
    block_size: BlockSize
    coefficients: Geometry = "padded"
    soft_targets: bool = False
    train_per_subject: int = Field(default=5, ge=1)
    scaling_mins: List[float]
    scaling_maxs: List[float]
    w1: List[List[float]]
    w2: List[List[float]]
