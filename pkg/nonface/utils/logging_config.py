"""
Enhanced logging configuration using Rich
"""
import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install

from nonface.config import settings

# Create console for rich output
console = Console()


def setup_logging(debug: bool = None):
    """Setup rich logging configuration"""
    if debug is None:
        debug = settings.debug
    log_level = logging.DEBUG if debug else logging.INFO

    # Locals in tracebacks only when debugging
    install(console=console, show_locals=debug)

    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        datefmt="[%X]",
        force=True,
        handlers=[
            RichHandler(
                console=console,
                rich_tracebacks=True,
                show_path=debug,
                tracebacks_show_locals=debug,
                markup=True,
                show_time=True,
                show_level=True,
            )
        ]
    )

    logger = logging.getLogger(__name__)
    logger.debug(f"[bold green]✓[/bold green] Logging configured (Level: {logging.getLevelName(log_level)})")

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the given name"""
    return logging.getLogger(name)
