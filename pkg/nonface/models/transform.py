from typing import Annotated

import numpy as np
from pydantic import AfterValidator, BaseModel, Field, field_validator, model_validator


def check_block_size(n: int) -> int:
    """Block edge must be N = 2^m with m > 2"""
    if n < 8 or n & (n - 1):
        raise ValueError("block size must be a power of two ≥ 8")
    return n


BlockSize = Annotated[int, AfterValidator(check_block_size)]


class DctBlock(BaseModel):
    """
    DCT coefficients of one block, flattened in raster-scan order

    coeffs[0] is the DC coefficient (c_1 in 1-based notation), the rest are AC.
    """
    n: BlockSize
    coeffs: np.ndarray

    model_config = {
        "arbitrary_types_allowed": True,
        "frozen": True,
    }

    @field_validator("coeffs")
    @classmethod
    def _check_finite(cls, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("DCT coefficients must be finite")
        return v

    @model_validator(mode="after")
    def _check_length(self):
        if self.coeffs.size != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} coefficients, got {self.coeffs.size}")
        return self

    @property
    def dc(self) -> float:
        return float(self.coeffs[0])

    @property
    def ac(self) -> np.ndarray:
        return self.coeffs[1:]


class BlockGrid(BaseModel):
    """
    Image cut into n x n tiles

    blocks has shape (blocks_y, blocks_x, n, n); iterating it row by row gives the
    tiles in row-major block order.
    """
    blocks_x: int = Field(ge=1)
    blocks_y: int = Field(ge=1)
    n: BlockSize
    blocks: np.ndarray

    model_config = {
        "arbitrary_types_allowed": True,
        "frozen": True,
    }

    @model_validator(mode="after")
    def _check_shape(self):
        expected = (self.blocks_y, self.blocks_x, self.n, self.n)
        if self.blocks.shape != expected:
            raise ValueError(f"blocks shape {self.blocks.shape} does not match {expected}")
        return self

    @property
    def count(self) -> int:
        return self.blocks_x * self.blocks_y

    def tiles(self) -> np.ndarray:
        """Tiles as a (count, n, n) stack in row-major block order"""
        return self.blocks.reshape(self.count, self.n, self.n)
