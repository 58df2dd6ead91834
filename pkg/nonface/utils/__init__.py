from nonface.utils.logging_config import console, get_logger, setup_logging
from nonface.utils.rng import make_rng, spawn_rngs

__all__ = [
    "console",
    "get_logger",
    "setup_logging",
    "make_rng",
    "spawn_rngs",
]
