"""
FrogLab
Tasks v1.1
20260926

Independent units of work. A task is (kind, index, params); its
randomness derives from the master seed and its params, never from the
worker that happens to run it.

Version History:
- v1.0: Passage and percolation tasks
- v1.1: fm, weighted, indicator and verify tasks
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from froglab.config_manager.experiment import ExperimentConfig
from froglab.percolation.inequalities import check_inequalities
from froglab.runner.battery import run_check, task_seed
from froglab.stats.experiments import (
    measure_fm,
    measure_indicators,
    measure_passage,
    measure_weighted,
)
from froglab.utils.lattice import direction_vector, scale

logger = logging.getLogger(__name__)

PASSAGE_KINDS = ("sim", "scaling", "tails", "paths")


@dataclass(frozen=True)
class Task:
    kind: str
    index: int
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return f"{self.kind}-{self.index:06d}"

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "index": self.index, "params": dict(sorted(self.params.items()))}


def build_tasks(config: ExperimentConfig) -> List[Task]:
    """Expand a run configuration into its ordered task list."""
    kind = config.kind
    params: List[Dict[str, Any]] = []
    if kind in PASSAGE_KINDS:
        for d in config.dimensions:
            for n in config.n_grid:
                params.extend({"d": d, "n": n, "replica": r} for r in range(config.replicas))
    elif kind == "fm":
        for n in config.n_grid:
            params.extend({"d": config.d, "n": n, "replica": r} for r in range(config.replicas))
    elif kind == "perc":
        for L in config.L_grid:
            for M in config.M_grid:
                for p in config.p_grid:
                    params.extend(
                        {"d": config.d, "L": L, "M": M, "p": p, "instance": i}
                        for i in range(config.instances)
                    )
    elif kind == "weighted":
        for L in config.L_grid:
            params.extend({"d": config.d, "L": L, "replica": r} for r in range(config.instances))
    elif kind == "indicators":
        L = config.L_grid[0]
        for M in config.M_grid:
            params.extend({"d": config.d, "L": L, "M": M, "replica": r} for r in range(config.instances))
    else:
        raise ValueError(f"Unknown experiment kind {kind!r}")
    return [Task(kind, index, p) for index, p in enumerate(params)]


def build_verify_tasks(config: ExperimentConfig) -> List[Task]:
    """One task per selected battery check, in battery order."""
    return [
        Task("verify", index, {"check": check, "count": config.count(check)})
        for index, check in enumerate(config.battery)
    ]


def run_perc_instance(seed: int, d: int, L: int, M: int, p: float) -> Dict[str, Any]:
    report = check_inequalities(seed, d, L, M, p)
    return {
        "p_or_qM": report.site_field.density,
        "X_L": report.animal.x_l,
        "N_bound": report.animal.n_bound,
        "N_exact": report.animal.exact,
        "tess_bound": report.tessellation.bound,
        "violation": int(report.violation),
    }


def execute_task(task: Task, config: ExperimentConfig) -> Dict[str, Any]:
    """
    Run one task and return its JSON-ready result.

    Module-level so worker processes can unpickle it.
    """
    p = task.params
    kind = task.kind
    if kind in PASSAGE_KINDS:
        measurement = measure_passage(
            p["d"], p["n"], config.direction, config.master_seed, p["replica"],
            config.horizon_cap, with_hops=(kind == "paths"),
        )
        return measurement.to_dict()
    if kind == "fm":
        x = scale(direction_vector(config.direction, p["d"]), p["n"])
        m = measure_fm(p["d"], x, config.master_seed, p["replica"], config.horizon_cap)
        return {"replica": m.replica, "t": m.t, "f": m.f}
    if kind == "perc":
        return run_perc_instance(task_seed(config.master_seed, task.index), p["d"], p["L"], p["M"], p["p"])
    if kind == "weighted":
        return {"value": measure_weighted(p["d"], p["L"], config.master_seed, p["replica"], config.horizon_cap)}
    if kind == "indicators":
        opened, total = measure_indicators(p["d"], p["L"], p["M"], config.master_seed, p["replica"])
        return {"open": opened, "total": total}
    if kind == "verify":
        return run_check(p["check"], config, task.index, p["count"]).to_dict()
    raise ValueError(f"Unknown task kind {kind!r}")
