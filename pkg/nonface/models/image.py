from typing import List

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class GrayImage(BaseModel):
    """8-bit grayscale raster; pixels is a (height, width) row-major array"""
    width: int = Field(ge=1)
    height: int = Field(ge=1)
    pixels: np.ndarray

    model_config = {
        "arbitrary_types_allowed": True,
        "frozen": True,
    }

    @field_validator("pixels")
    @classmethod
    def _check_range(cls, v: np.ndarray) -> np.ndarray:
        if v.ndim != 2:
            raise ValueError("pixels must be a 2-D array")
        if v.size and (v.min() < 0 or v.max() > 255):
            raise ValueError("pixel values must lie in [0, 255]")
        return v

    @model_validator(mode="after")
    def _check_shape(self):
        if self.pixels.shape != (self.height, self.width):
            raise ValueError(
                f"pixels shape {self.pixels.shape} does not match {self.height}x{self.width}"
            )
        return self

    @classmethod
    def from_array(cls, pixels) -> "GrayImage":
        """Wrap a 2-D array of luminance values"""
        pixels = np.asarray(pixels)
        return cls(width=pixels.shape[1], height=pixels.shape[0], pixels=pixels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


class LabeledImage(BaseModel):
    image: GrayImage
    subject_id: int = Field(ge=0)
    sample_index: int = Field(ge=0)

    model_config = {"frozen": True}


class Dataset(BaseModel):
    """Face database; images are ordered subject-major, then by sample"""
    num_subjects: int = Field(ge=1)
    samples_per_subject: int = Field(ge=1)
    images: List[LabeledImage]

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_layout(self):
        expected = self.num_subjects * self.samples_per_subject
        if len(self.images) != expected:
            raise ValueError(f"dataset holds {len(self.images)} images, expected {expected}")

        seen = {}
        for item in self.images:
            if item.subject_id >= self.num_subjects:
                raise ValueError(f"subject_id {item.subject_id} out of range")
            seen.setdefault(item.subject_id, set()).add(item.sample_index)
        full = set(range(self.samples_per_subject))
        for subject_id, indices in seen.items():
            if indices != full:
                raise ValueError(f"subject {subject_id} does not have samples 0..{self.samples_per_subject - 1}")
        return self
