from pathlib import Path
from typing import Literal, Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Dataset Configuration
    orl_root: Optional[Path] = None
    train_per_subject: int = 5

    # Level 1 (feature) Configuration
    coefficients: Literal["padded", "cropped"] = "padded"

    # Level 2 (backpropagation) Configuration
    max_epochs: int = 300
    learning_rate: float = 0.1
    momentum: float = 0.9
    target_mse: float = 1e-3
    soft_targets: bool = False

    # Experiment Configuration
    runs: int = 5
    base_seed: int = 42
    jobs: int = 1

    # Application Configuration
    app_name: str = "nonface"
    debug: bool = False

    def resolve_root(self, root: Optional[str]) -> Path:
        """
        Pick the dataset root: explicit argument first, then NON_ORL_ROOT

        Raises ValueError when neither is available.
        """
        if root:
            return Path(root)
        if self.orl_root is not None:
            return self.orl_root
        raise ValueError("no dataset root given and NON_ORL_ROOT is not set")

    class Config:
        env_prefix = "NON_"
        env_file = ".env"
        case_sensitive = False


settings = Settings()
