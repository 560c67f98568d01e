"""
FrogLab Verify CLI Command
Verify Command v1.1
20260928

`froglab verify <config>`: run the invariant and oracle battery.
Exit 0 iff no hard violation.

Version History:
- v1.0: Battery summary table
- v1.1: Witness listing
"""

import json
import sys
from typing import Optional

import click
from rich.console import Console
from rich.table import Table

from froglab.cli.commands.run import run_with_progress
from froglab.config_manager.validator import load_experiment
from froglab.exceptions import FroglabError, InvariantViolation
from froglab.runner.outputs import WITNESSES
from froglab.runner.tasks import build_verify_tasks

console = Console()

# Witnesses echoed to the terminal; the full list is in witnesses.json
SHOWN_WITNESSES = 3


@click.command()
@click.argument("config_path", type=click.Path(dir_okay=False))
@click.option("--output", "-o", type=click.Path(file_okay=False), help="Results directory (overrides experiment.output)")
@click.option("--workers", "-w", type=click.IntRange(min=1), help="Worker processes (overrides FROGLAB_WORKERS)")
def verify(config_path: str, output: Optional[str], workers: Optional[int]):
    """
    Check engine, oracle and percolation invariants.

    Example:
        froglab verify config/verify.ini
    """
    try:
        config = load_experiment(config_path, "verify")
        summary = run_with_progress("verify", config, build_verify_tasks(config), output, workers)
    except FroglabError as e:
        console.print(f"[red]✗ {e}[/red]")
        sys.exit(e.exit_code)

    table = Table(title=f"Verify (seed {config.master_seed})", show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan")
    table.add_column("Instances", justify="right")
    table.add_column("Censored", justify="right")
    table.add_column("Result")
    for check in summary.outputs.checks:
        if check.violations:
            result = f"[red]✗ {check.violations} violation(s)[/red]"
        else:
            result = "[green]✓ pass[/green]"
        table.add_row(check.check, str(check.instances), str(check.censored), result)
    console.print(table)

    if summary.violations:
        console.print(f"\n[red]✗ {summary.violations} violation(s); witnesses in {summary.output_dir / WITNESSES}[/red]")
        for witness in summary.outputs.witnesses[:SHOWN_WITNESSES]:
            console.print(json.dumps(witness, sort_keys=True))
        sys.exit(InvariantViolation.exit_code)
    console.print("\n[green]✓ No violations[/green]")

