"""
FrogLab
CLI Interface v1.2.0
20260928

Main CLI interface using Click framework

Version History:
- v1.0.0: run command
- v1.1.0: verify command with witness dump
- v1.2.0: show command, -v/-vv logging
"""

import logging
import os

import click
from rich.console import Console
from rich.logging import RichHandler

try:
    from froglab.__version__ import __version__
except ImportError:
    __version__ = "1.2.1"

from froglab.cli.commands.run import run
from froglab.cli.commands.show import show
from froglab.cli.commands.verify import verify
from froglab.config_manager.loader import ENV_LOG_LEVEL

console = Console(stderr=True)

_LEVELS = {0: None, 1: logging.INFO, 2: logging.DEBUG}


def setup_logging(verbose: int) -> None:
    """Route library logging through rich; -v is INFO, -vv DEBUG."""
    level = _LEVELS.get(min(verbose, 2))
    if level is None:
        level = getattr(logging, os.getenv(ENV_LOG_LEVEL, "WARNING").upper(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


@click.group()
@click.version_option(version=__version__, prog_name="froglab")
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or everything (-vv)")
@click.pass_context
def cli(ctx, verbose):
    """
    FrogLab - first passage in the frog model

    Run experiments, verify engine invariants and inspect result
    directories. FROGLAB_WORKERS sets the worker count.

    Use 'froglab COMMAND --help' for more information on a specific command.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    setup_logging(verbose)


cli.add_command(run)
cli.add_command(verify)
cli.add_command(show)


if __name__ == "__main__":
    cli()
