"""
FrogLab Show CLI Command
Show Command v1.1
20260928

Print the tables of a results directory.

Version History:
- v1.0: Manifest summary and CSV tables
- v1.1: --file filter and --limit
"""

import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import click
from rich.console import Console
from rich.table import Table

from froglab.exceptions import FroglabError, OutputError
from froglab.runner.outputs import MANIFEST, RunManifest, read_csv

console = Console()

STATUS_GLYPHS = {"PASS": "[green]✓ PASS[/green]", "WARN": "[yellow]⚠ WARN[/yellow]"}


def csv_table(title: str, header: Sequence[str], rows: Iterable[Sequence[str]], limit: Optional[int] = None) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    for i, name in enumerate(header):
        table.add_column(name, style="cyan" if i == 0 else None, justify="left" if i == 0 else "right")
    rows = list(rows)
    for row in rows[:limit] if limit else rows:
        table.add_row(*row)
    if limit and len(rows) > limit:
        table.caption = f"{limit} of {len(rows)} rows"
    return table


def verdict_table(verdicts: List[dict]) -> Table:
    table = Table(title="Soft checks", show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Detail", style="dim")
    for v in verdicts:
        table.add_row(v["name"], STATUS_GLYPHS.get(v["status"], v["status"]), v["detail"])
    return table


def manifest_table(manifest: RunManifest) -> Table:
    table = Table(title="Run", show_header=False)
    table.add_column("Key", style="cyan")
    table.add_column("Value")
    table.add_row("Command", manifest.command)
    table.add_row("Kind", str(manifest.config.get("kind") or "verify"))
    table.add_row("Seed", str(manifest.config.get("master_seed")))
    table.add_row("Version", manifest.version)
    table.add_row("Started", manifest.started)
    table.add_row("Finished", manifest.finished)
    table.add_row("Tasks", str(len(manifest.tasks)))
    censored = sum(manifest.censored.values())
    table.add_row("Censored", f"[yellow]{censored}[/yellow]" if censored else "0")
    if manifest.violations:
        table.add_row("Violations", f"[red]✗ {manifest.violations}[/red]")
    else:
        table.add_row("Violations", "[green]✓ 0[/green]")
    table.add_row("Partial", "[yellow]yes[/yellow]" if manifest.partial else "no")
    return table


@click.command()
@click.argument("results_dir", type=click.Path(file_okay=False))
@click.option("--file", "-f", "only", multiple=True, help="Only show these CSV files")
@click.option("--limit", "-n", type=int, default=None, help="Rows per table")
def show(results_dir: str, only, limit: Optional[int]):
    """
    Print the manifest summary and every CSV in a results directory.

    Example:
        froglab show results/scaling
    """
    root = Path(results_dir)
    try:
        if not root.is_dir():
            raise OutputError(f"Results directory not found: {root}")
        if (root / MANIFEST).is_file():
            manifest = RunManifest.read(root)
            console.print(manifest_table(manifest))
            if manifest.verdicts:
                console.print(verdict_table(manifest.verdicts))
        else:
            console.print(f"[yellow]No {MANIFEST} in {root}[/yellow]")

        files = sorted(p for p in root.glob("*.csv") if not only or p.name in only)
        if not files:
            console.print("[yellow]No CSV files found.[/yellow]")
        for path in files:
            header, rows = read_csv(path)
            console.print(csv_table(path.name, header, rows, limit))
    except FroglabError as e:
        console.print(f"[red]✗ {e}[/red]")
        sys.exit(e.exit_code)
