import argparse
from typing import List, Optional

from rich.markup import escape

from nonface import __version__
from nonface.commands import CommandError, eval as eval_command, extract, reproduce, train
from nonface.config import settings
from nonface.utils.logging_config import console, get_logger, setup_logging

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with every subcommand registered"""
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Block-DCT network-of-networks face recognizer",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--debug", action="store_true", default=settings.debug, help="verbose logging")

    subparsers = parser.add_subparsers(dest="command", metavar="{extract,train,eval,reproduce}")
    subparsers.required = True

    extract.register(subparsers)
    train.register(subparsers)
    eval_command.register(subparsers)
    reproduce.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.debug)

    try:
        return args.func(args)
    except CommandError as e:
        console.print(f"[bold red]✗[/bold red] {escape(e.detail)}")
        return e.exit_code
