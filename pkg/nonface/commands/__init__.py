import argparse
import functools

from nonface.models.features import CompactionMethod
from nonface.models.transform import check_block_size
from nonface.services.classifier_service import DivergenceError
from nonface.utils.logging_config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3


class CommandError(Exception):
    """Raised by command handlers; main() prints detail and exits with exit_code"""

    def __init__(self, exit_code: int, detail: str):
        self.exit_code = exit_code
        self.detail = detail
        super().__init__(detail)


def handle_errors(func):
    """Translate service exceptions into CommandError exit codes"""
    @functools.wraps(func)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return func(args)
        except CommandError:
            raise
        except DivergenceError as e:
            logger.error(f"[bold red]✗[/bold red] {e}")
            raise CommandError(EXIT_RUNTIME, str(e))
        except ValueError as e:
            # DatasetError, PgmParseError and pydantic ValidationError all land here
            raise CommandError(EXIT_USAGE, str(e))
        except FileNotFoundError as e:
            raise CommandError(EXIT_USAGE, f"no such file: {e.filename}")
        except OSError as e:
            logger.error(f"[bold red]✗[/bold red] I/O failure: [red]{e}[/red]")
            raise CommandError(EXIT_RUNTIME, f"I/O failure: {e}")
    return wrapper


def block_size_arg(value: str) -> int:
    try:
        return check_block_size(int(value))
    except ValueError:
        raise argparse.ArgumentTypeError("block size must be a power of two ≥ 8")


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if number < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return number


def seed_arg(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer seed")
    if number < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return number


def add_dataset_root(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "dataset_root", nargs="?", default=None,
        help="ORL-layout directory (default: $NON_ORL_ROOT)",
    )


def add_feature_options(parser: argparse.ArgumentParser, block_size: int = 8) -> None:
    parser.add_argument("--block-size", type=block_size_arg, default=block_size,
                        help="block edge N (power of two ≥ 8)")
    parser.add_argument("--method", type=str.lower, default=CompactionMethod.M5.value,
                        choices=[m.value for m in CompactionMethod],
                        help="Level 1 compaction method")
    parser.add_argument("--coefficients", choices=["padded", "cropped"], default=None,
                        help="zero-pad images to block multiples or crop them (default: settings)")
