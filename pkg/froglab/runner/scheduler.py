"""
FrogLab
Task Scheduler v1.1
20260927

Run independent tasks on a process pool and collect their results in
task-index order.

Every finished task is cached as `<output>/tasks/<name>.json`; a later
run with the same configuration reuses cached results and only computes
the missing tasks. The worker count changes wall time, never bytes.

Version History:
- v1.0: ProcessPoolExecutor map with in-order collection
- v1.1: Per-task JSON cache and resume
"""

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from froglab.config_manager.experiment import ExperimentConfig
from froglab.config_manager.loader import ENV_WORKERS
from froglab.exceptions import HorizonExhausted, OutputError
from froglab.runner.tasks import Task, execute_task

logger = logging.getLogger(__name__)

TASK_DIR = "tasks"

# Result key marking a task that hit the horizon cap
EXHAUSTED = "horizon_exhausted"


def config_fingerprint(config: ExperimentConfig) -> str:
    """Hash of everything that determines task results."""
    text = json.dumps(config.echo(), sort_keys=True, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def resolve_workers(config: ExperimentConfig) -> int:
    """FROGLAB_WORKERS wins over the config value."""
    raw = os.getenv(ENV_WORKERS)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning("Ignoring non-integer %s=%r", ENV_WORKERS, raw)
    return config.workers


def run_task(task: Task, config: ExperimentConfig) -> Dict[str, Any]:
    """execute_task, with cap exhaustion turned into a flagged result."""
    try:
        return execute_task(task, config)
    except HorizonExhausted as e:
        logger.warning("%s: %s", task.name, e)
        return {EXHAUSTED: e.horizon}


def _run_task_args(args) -> Dict[str, Any]:
    return run_task(*args)


class TaskScheduler:
    """Process-pool task runner with a resumable on-disk cache"""

    def __init__(
        self,
        config: ExperimentConfig,
        output_dir: Optional[Path] = None,
        workers: Optional[int] = None,
    ):
        """
        Args:
            config: Experiment configuration shared by every task
            output_dir: Run directory; None disables the cache
            workers: Process count (defaults to resolve_workers)
        """
        self.config = config
        self.output_dir = Path(output_dir) if output_dir is not None else None
        self.workers = workers if workers is not None else resolve_workers(config)
        self.fingerprint = config_fingerprint(config)
        self.reused = 0

    @property
    def cache_dir(self) -> Optional[Path]:
        if self.output_dir is None:
            return None
        return self.output_dir / TASK_DIR

    def _cache_path(self, task: Task) -> Path:
        return self.cache_dir / f"{task.name}.json"

    def load_cached(self, task: Task) -> Optional[Dict[str, Any]]:
        """Cached result for task, or None when absent or stale."""
        if self.cache_dir is None:
            return None
        path = self._cache_path(task)
        if not path.is_file():
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("Discarding unreadable cache %s: %s", path, e)
            return None
        if data.get("config") != self.fingerprint or data.get("task") != task.to_dict():
            return None
        return data["result"]

    def store(self, task: Task, result: Dict[str, Any]) -> None:
        if self.cache_dir is None:
            return
        payload = {"config": self.fingerprint, "task": task.to_dict(), "result": result}
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            with open(self._cache_path(task), "w", encoding="utf-8") as f:
                f.write(json.dumps(payload, sort_keys=True))
                f.write("\n")
        except OSError as e:
            raise OutputError(f"Cannot write task cache for {task.name}: {e}") from e

    def run(
        self,
        tasks: Sequence[Task],
        progress: Optional[Callable[[Task], None]] = None,
    ) -> List[Dict[str, Any]]:
        """
        Run every task not already cached.

        Args:
            tasks: Tasks in index order
            progress: Called once per task as its result arrives

        Returns:
            One result dict per task, in the order of tasks
        """
        results: List[Optional[Dict[str, Any]]] = [None] * len(tasks)
        pending: List[int] = []
        for i, task in enumerate(tasks):
            cached = self.load_cached(task)
            if cached is None:
                pending.append(i)
            else:
                results[i] = cached
                if progress:
                    progress(task)
        self.reused = len(tasks) - len(pending)
        logger.info(
            "%d tasks, %d cached, %d to run on %d worker(s)",
            len(tasks), self.reused, len(pending), self.workers,
        )

        todo = [tasks[i] for i in pending]
        if self.workers <= 1 or len(todo) <= 1:
            outcomes = (run_task(task, self.config) for task in todo)
            self._collect(todo, pending, outcomes, results, progress)
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                outcomes = pool.map(
                    _run_task_args, [(task, self.config) for task in todo], chunksize=1
                )
                self._collect(todo, pending, outcomes, results, progress)
        return results

    def _collect(self, todo, pending, outcomes, results, progress) -> None:
        for task, i, result in zip(todo, pending, outcomes):
            self.store(task, result)
            results[i] = result
            if progress:
                progress(task)
