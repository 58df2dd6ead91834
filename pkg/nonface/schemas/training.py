from pydantic import BaseModel, Field

from nonface.config import settings


class TrainConfig(BaseModel):
    max_epochs: int = Field(default=300, ge=1)
    learning_rate: float = Field(default=0.1, gt=0)
    momentum: float = Field(default=0.9, ge=0, lt=1)
    target_mse: float = Field(default=1e-3, ge=0)
    seed: int = Field(default=0, ge=0)
    soft_targets: bool = False

    model_config = {"frozen": True}

    @classmethod
    def from_settings(cls, **overrides) -> "TrainConfig":
        """Build from global settings, letting explicit (non-None) overrides win"""
        values = {
            "max_epochs": settings.max_epochs,
            "learning_rate": settings.learning_rate,
            "momentum": settings.momentum,
            "target_mse": settings.target_mse,
            "soft_targets": settings.soft_targets,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
