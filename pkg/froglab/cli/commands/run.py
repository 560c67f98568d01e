"""
FrogLab Run CLI Command
Run Command v1.1
20260928

`froglab run <config>`: execute one experiment kind and write its
tables and manifest.

Version History:
- v1.0: Initial run command
- v1.1: --output/--workers overrides, progress bar
"""

import sys
from typing import Optional

import click
from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from froglab.cli.commands.show import manifest_table, verdict_table
from froglab.config_manager.validator import load_experiment
from froglab.exceptions import FroglabError, HorizonExhausted
from froglab.runner.pipeline import RunSummary, execute
from froglab.runner.tasks import build_tasks

console = Console()


def progress_bar() -> Progress:
    return Progress(
        TextColumn("[cyan]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    )


def run_with_progress(command: str, config, tasks, output: Optional[str], workers: Optional[int]) -> RunSummary:
    with progress_bar() as progress:
        bar = progress.add_task(command, total=len(tasks))
        return execute(
            command, config, tasks, output_dir=output, workers=workers,
            progress=lambda _task: progress.advance(bar),
        )


@click.command()
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--output", "-o", type=click.Path(file_okay=False), help="Results directory (overrides experiment.output)")
@click.option("--workers", "-w", type=click.IntRange(min=1), help="Worker processes (overrides FROGLAB_WORKERS)")
def run(config_path: str, output: Optional[str], workers: Optional[int]):
    """
    Run the experiment described by a config file.

    Examples:
        froglab run config/scaling.ini
        FROGLAB_WORKERS=8 froglab run config/perc.ini -o results/perc
    """
    try:
        config = load_experiment(config_path, "run")
        summary = run_with_progress("run", config, build_tasks(config), output, workers)
    except FroglabError as e:
        console.print(f"[red]✗ {e}[/red]")
        sys.exit(e.exit_code)

    console.print(manifest_table(summary.manifest))
    if summary.manifest.verdicts:
        console.print(verdict_table(summary.manifest.verdicts))
    console.print(f"\nWrote {len(summary.manifest.files)} file(s) to [cyan]{summary.output_dir}[/cyan]")
    if summary.reused:
        console.print(f"[dim]{summary.reused} task(s) reused from cache[/dim]")

    if summary.partial:
        console.print("[yellow]⚠ Horizon cap reached; censored replicas are marked NA[/yellow]")
        sys.exit(HorizonExhausted.exit_code)
