from datetime import datetime
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from nonface.models.features import CompactionMethod
from nonface.models.transform import BlockSize
from nonface.schemas.training import TrainConfig

Geometry = Literal["padded", "cropped"]


class ExperimentConfig(BaseModel):
    """One cell of a results table: (method, block size, hidden count) plus run settings"""
    method: CompactionMethod
    block_size: BlockSize
    hidden_dim: int = Field(ge=1)
    runs: int = Field(default=5, ge=1)
    train_cfg: TrainConfig = Field(default_factory=TrainConfig)
    base_seed: int = Field(default=42, ge=0)
    coefficients: Geometry = "padded"
    train_per_subject: int = Field(default=5, ge=1)

    model_config = {"frozen": True}

    def seed_for(self, run: int) -> int:
        return self.base_seed + run


class FailedRun(BaseModel):
    run: int
    seed: int
    epoch: Optional[int] = None
    message: str


class RunResult(BaseModel):
    config: ExperimentConfig
    num_coefficients: int
    seeds: List[int] = []
    per_run_error_pct: List[float] = []
    final_mse: List[float] = []
    epochs_run: List[int] = []
    failed_runs: List[FailedRun] = []
    warnings: List[str] = []
    avg_error_pct: Optional[float] = None
    min_error_pct: Optional[float] = None

    @model_validator(mode="after")
    def _check_aggregates(self):
        if self.avg_error_pct is not None and self.min_error_pct is not None:
            if self.min_error_pct > self.avg_error_pct + 1e-12:
                raise ValueError("min error exceeds average error")
        return self

    @property
    def succeeded(self) -> bool:
        return bool(self.per_run_error_pct)


class ManifestEntry(BaseModel):
    result: RunResult
    elapsed_s: float


class ExperimentManifest(BaseModel):
    """Audit record written next to rendered tables"""
    version: str
    created_at: datetime
    base_seed: int
    elapsed_s: float
    entries: List[ManifestEntry]
