"""
FrogLab
Run Pipeline v1.0
20260928

build tasks -> schedule -> assemble tables -> write files + manifest.
Shared by `froglab run` and `froglab verify`.
"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, List, Optional

from froglab.config_manager.experiment import ExperimentConfig
from froglab.runner.outputs import RunManifest, RunOutputs, assemble_outputs, task_entry
from froglab.runner.scheduler import TaskScheduler
from froglab.runner.tasks import Task, build_tasks, build_verify_tasks

logger = logging.getLogger(__name__)


@dataclass
class RunSummary:
    output_dir: Path
    manifest: RunManifest
    outputs: RunOutputs
    reused: int = 0

    @property
    def partial(self) -> bool:
        return self.manifest.partial

    @property
    def violations(self) -> int:
        return self.manifest.violations


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def execute(
    command: str,
    config: ExperimentConfig,
    tasks: List[Task],
    output_dir: Optional[Path] = None,
    workers: Optional[int] = None,
    progress: Optional[Callable[[Task], None]] = None,
) -> RunSummary:
    output_dir = Path(output_dir or config.output)
    manifest = RunManifest(command=command, config=config.echo(), started=_now())
    scheduler = TaskScheduler(config, output_dir, workers)
    results = scheduler.run(tasks, progress)
    outputs = assemble_outputs(config, tasks, results)

    manifest.files = outputs.write(output_dir)
    manifest.tasks = [task_entry(t, config) for t in tasks]
    manifest.censored = dict(outputs.censored)
    manifest.verdicts = [
        {"name": v.name, "status": v.status, "detail": v.detail} for v in outputs.verdicts
    ]
    manifest.violations = outputs.violations
    # verify reports censored instances without flagging the run
    manifest.partial = command == "run" and any(outputs.censored.values())
    manifest.finished = _now()
    manifest.write(output_dir)
    logger.info(
        "%s finished: %d tasks (%d cached), %d violations, partial=%s",
        command, len(tasks), scheduler.reused, manifest.violations, manifest.partial,
    )
    return RunSummary(output_dir, manifest, outputs, scheduler.reused)


def run_experiment(config: ExperimentConfig, **kwargs) -> RunSummary:
    """Run config.kind and write its tables."""
    return execute("run", config, build_tasks(config), **kwargs)


def run_verify(config: ExperimentConfig, **kwargs) -> RunSummary:
    """Run the selected battery checks and write verify.csv plus witnesses."""
    return execute("verify", config, build_verify_tasks(config), **kwargs)
