from enum import Enum

import numpy as np
from pydantic import BaseModel, field_validator, model_validator

from nonface.models.transform import BlockSize


class CompactionMethod(str, Enum):
    """Level 1 block functions reducing an AC spectrum to one scalar"""
    M1 = "m1"  # sum of squares
    M2 = "m2"  # sum of magnitudes
    M3 = "m3"  # mean square
    M4 = "m4"  # mean magnitude
    M5 = "m5"  # average absolute deviation

    @property
    def label(self) -> str:
        return self.name


class FeatureVector(BaseModel):
    """One λ per block, in row-major block order"""
    values: np.ndarray
    method: CompactionMethod
    block_size: BlockSize

    model_config = {
        "arbitrary_types_allowed": True,
        "frozen": True,
    }

    @field_validator("values")
    @classmethod
    def _check_values(cls, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64).ravel()
        if v.size == 0:
            raise ValueError("feature vector is empty")
        if np.any(v < 0):
            raise ValueError("block-level coefficients must be nonnegative")
        return v

    def __len__(self) -> int:
        return self.values.size


class ScalingParams(BaseModel):
    """Per-dimension min/max fitted on training vectors"""
    mins: np.ndarray
    maxs: np.ndarray

    model_config = {
        "arbitrary_types_allowed": True,
        "frozen": True,
    }

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.mins.shape != self.maxs.shape or self.mins.ndim != 1:
            raise ValueError("mins and maxs must be 1-D arrays of equal length")
        if np.any(self.mins > self.maxs):
            raise ValueError("scaling min exceeds max")
        return self

    @property
    def dim(self) -> int:
        return self.mins.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalingParams):
            return NotImplemented
        return np.array_equal(self.mins, other.mins) and np.array_equal(self.maxs, other.maxs)
