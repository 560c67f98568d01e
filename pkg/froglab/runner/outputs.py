"""
FrogLab
Run Outputs v1.2
20260928

CSV tables, witness dumps and the run manifest.

Rows are ordered by task index and every number goes through
format_number, so two runs of one configuration produce identical CSV
bytes. Wall-clock timestamps appear only in manifest.json.

Version History:
- v1.0: samples.csv, scaling.csv, perc.csv, manifest.json
- v1.1: tails, paths, fm, weighted and indicator tables
- v1.2: verify.csv, witnesses.json, verdicts.csv
"""

import csv
import io
import json
import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from froglab.__version__ import __version__
from froglab.config_manager.experiment import ExperimentConfig
from froglab.exceptions import OutputError
from froglab.runner.battery import CheckResult, task_seed
from froglab.runner.scheduler import EXHAUSTED
from froglab.runner.tasks import PASSAGE_KINDS, Task
from froglab.stats.estimators import PASS, WARN, Verdict
from froglab.stats.experiments import (
    FmMeasurement,
    PassageMeasurement,
    fm_variance_gap,
    indicator_rate,
    indicator_verdict,
    path_length_stats,
    path_verdicts,
    scaling_table,
    scaling_verdicts,
    tail_rows,
    weighted_growth,
)
from froglab.utils.formatting import format_number
from froglab.utils.lattice import direction_vector, scale

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
WITNESSES = "witnesses.json"

SCALING_HEADER = [
    "d", "n", "replicas", "mean", "var", "var_over_n", "var_logn_over_n", "kappa_hat", "ci_mean", "ci_var",
]
PERC_HEADER = ["instance", "L", "M", "p_or_qM", "X_L", "N_bound", "tess_bound", "violation"]
TAILS_HEADER = ["d", "n", "threshold", "survival", "low", "high"]
PATHS_HEADER = ["n", "count", "min_l", "mean_l", "max_l", "mean_t", "exact_hop_rate"]
JUMPS_HEADER = ["L", "survival"]
FM_HEADER = ["n", "m", "replicas", "var_t", "var_f", "gap", "gap_normalized", "ci_low", "ci_high"]
WEIGHTED_HEADER = ["L", "replicas", "mean", "ci_mean", "ratio"]
INDICATORS_HEADER = ["M", "open", "total", "q_hat", "low", "high"]
VERIFY_HEADER = ["check", "instances", "violations", "censored"]
VERDICTS_HEADER = ["name", "status", "detail"]


def samples_header(d: int) -> List[str]:
    return ["task", "replica", "n"] + [f"dx{i}" for i in range(1, d + 1)] + [
        "T", "path_len", "max_jump", "frontier_radius",
    ]


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def write_text(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e
    logger.debug("wrote %s", path)
    return path


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    return write_text(path, render_csv(header, rows))


def write_json(path: Path, data: Any) -> Path:
    return write_text(path, json.dumps(data, indent=2, sort_keys=True, default=str) + "\n")


def read_csv(path: Path) -> Tuple[List[str], List[List[str]]]:
    """Header and rows of a CSV written by write_csv."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            rows = list(csv.reader(f))
    except OSError as e:
        raise OutputError(f"Cannot read {path}: {e}") from e
    if not rows:
        return [], []
    return rows[0], rows[1:]


@dataclass
class RunManifest:
    """Everything needed to re-run any single task of a run"""

    command: str
    config: Dict[str, Any]
    version: str = __version__
    started: str = ""
    finished: str = ""
    tasks: List[Dict[str, Any]] = field(default_factory=list)
    censored: Dict[str, int] = field(default_factory=dict)
    verdicts: List[Dict[str, str]] = field(default_factory=list)
    violations: int = 0
    partial: bool = False
    files: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def write(self, output_dir: Path) -> Path:
        return write_json(Path(output_dir) / MANIFEST, self.to_dict())

    @classmethod
    def read(cls, output_dir: Path) -> "RunManifest":
        path = Path(output_dir) / MANIFEST
        try:
            with open(path, "r", encoding="utf-8") as f:
                return cls(**json.load(f))
        except (OSError, json.JSONDecodeError, TypeError) as e:
            raise OutputError(f"Cannot read manifest {path}: {e}") from e


def task_entry(task: Task, config: ExperimentConfig) -> Dict[str, Any]:
    """Manifest record for one task: its params plus the seed that drives it."""
    entry = task.to_dict()
    entry["name"] = task.name
    if task.kind == "perc":
        entry["seed"] = task_seed(config.master_seed, task.index)
    elif task.kind == "verify":
        entry["seed"] = config.master_seed
        entry["stream"] = task.index
    else:
        entry["seed"] = config.master_seed
        entry["replica"] = task.params.get("replica")
    return entry


@dataclass
class RunOutputs:
    """Tables of one run, before they touch the disk"""

    files: Dict[str, str] = field(default_factory=dict)
    verdicts: List[Verdict] = field(default_factory=list)
    censored: Dict[str, int] = field(default_factory=dict)
    violations: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)

    def add_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        self.files[name] = render_csv(header, rows)

    def write(self, output_dir: Path) -> List[str]:
        output_dir = Path(output_dir)
        for name, text in self.files.items():
            write_text(output_dir / name, text)
        names = sorted(self.files)
        if self.verdicts:
            write_csv(
                output_dir / "verdicts.csv",
                VERDICTS_HEADER,
                ([v.name, v.status, v.detail] for v in self.verdicts),
            )
            names.append("verdicts.csv")
        if self.witnesses:
            write_json(output_dir / WITNESSES, self.witnesses)
            names.append(WITNESSES)
        return sorted(names)


def _exhausted(result: Dict[str, Any]) -> bool:
    return EXHAUSTED in result


def _passage_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    by_d: Dict[int, List[Tuple[Task, PassageMeasurement]]] = defaultdict(list)
    grouped: Dict[Tuple[int, int], List[PassageMeasurement]] = defaultdict(list)
    censored = 0
    for task, result in zip(tasks, results):
        if _exhausted(result):
            censored += 1
            continue
        m = PassageMeasurement.from_dict(result)
        censored += m.censored
        by_d[m.d].append((task, m))
        grouped[(m.d, m.n)].append(m)
    out.censored["passage"] = censored

    dims = config.dimensions
    for d in dims:
        name = "samples.csv" if len(dims) == 1 else f"samples_d{d}.csv"
        out.add_csv(name, samples_header(d), (
            [task.index, m.replica, m.n, *m.destination, m.value,
             None if m.censored else m.path_length,
             None if m.censored else m.max_jump,
             None if m.censored else m.frontier_radius]
            for task, m in by_d[d]
        ))

    if config.kind == "scaling":
        rows = scaling_table(config, lambda d, n: grouped[(d, n)])
        out.add_csv("scaling.csv", SCALING_HEADER, (
            [r.d, r.n, r.replicas, r.mean, r.var, r.var_over_n, r.var_logn_over_n,
             r.kappa_hat, r.ci_mean, r.ci_var]
            for r in rows
        ))
        out.verdicts.extend(scaling_verdicts(rows))
    elif config.kind == "tails":
        rows = []
        for d in dims:
            for n in config.n_grid:
                rows.extend(tail_rows(grouped[(d, n)], config.tail_factors))
        out.add_csv("tails.csv", TAILS_HEADER, (
            [r["d"], r["n"], r["threshold"], r["survival"], r["low"], r["high"]] for r in rows
        ))
    elif config.kind == "paths":
        stats = []
        for d in dims:
            for n in config.n_grid:
                if any(not m.censored for m in grouped[(d, n)]):
                    stats.append(path_length_stats(grouped[(d, n)], n))
        out.add_csv("paths.csv", PATHS_HEADER, (
            [s.n, s.count, s.min_l, s.mean_l, s.max_l, s.mean_t, s.exact_hop_rate] for s in stats
        ))
        pooled: Dict[int, int] = defaultdict(int)
        count = 0
        for s in stats:
            count += s.count
            for j, c in s.jump_histogram.items():
                pooled[j] += c
        if pooled:
            top = max(pooled)
            out.add_csv("jumps.csv", JUMPS_HEADER, (
                [L, sum(c for j, c in pooled.items() if j >= L) / count] for L in range(1, top + 1)
            ))
        out.verdicts.extend(path_verdicts(stats))


def _fm_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    grouped: Dict[int, List[FmMeasurement]] = defaultdict(list)
    censored = 0
    for task, result in zip(tasks, results):
        if _exhausted(result):
            censored += 1
            continue
        m = FmMeasurement(**result)
        censored += m.censored
        grouped[task.params["n"]].append(m)
    out.censored["fm"] = censored
    rows = []
    for n in config.n_grid:
        if sum(not m.censored for m in grouped[n]) < 2:
            continue
        x = scale(direction_vector(config.direction, config.d), n)
        report = fm_variance_gap(x, grouped[n], config.resamples, config.master_seed)
        rows.append([n, report.m, report.replicas, report.var_t, report.var_f, report.gap,
                     report.gap_normalized, report.ci_gap[0], report.ci_gap[1]])
    out.add_csv("fm.csv", FM_HEADER, rows)


def _animal_verdict(witness_only: Dict[int, int]) -> Verdict:
    """
    N_bound is exact N_{(d+1)L} only within the animal enumeration cap.
    Above it the path-animal weight is reported, which contains the path
    and so bounds X_L by construction.
    """
    if not witness_only:
        return Verdict("animal bound", PASS, "N_bound is exact N_{(d+1)L} on every row")
    detail = ", ".join(f"L={L} ({count} rows)" for L, count in sorted(witness_only.items()))
    return Verdict("animal bound", WARN, f"N_bound is the path-animal witness, not exact N: {detail}")


def _perc_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    rows = []
    witness_only: Dict[int, int] = defaultdict(int)
    for task, result in zip(tasks, results):
        p = task.params
        rows.append([p["instance"], p["L"], p["M"], result["p_or_qM"], result["X_L"],
                     result["N_bound"], result["tess_bound"], result["violation"]])
        if result["violation"]:
            out.violations += 1
            out.witnesses.append({
                "task": task.name, "seed": task_seed(config.master_seed, task.index), **p, **result,
            })
        if not result["N_exact"]:
            witness_only[p["L"]] += 1
    out.add_csv("perc.csv", PERC_HEADER, rows)
    out.verdicts.append(_animal_verdict(witness_only))


def _weighted_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    values: Dict[int, List[int]] = defaultdict(list)
    censored = 0
    for task, result in zip(tasks, results):
        if _exhausted(result):
            censored += 1
            continue
        values[task.params["L"]].append(result["value"])
    out.censored["weighted"] = censored
    if not values:
        return
    rows, verdict = weighted_growth(values, config.resamples, config.master_seed)
    out.add_csv("weighted.csv", WEIGHTED_HEADER, (
        [r.L, r.replicas, r.mean, r.ci_mean, r.ratio] for r in rows
    ))
    out.verdicts.append(verdict)


def _indicator_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    counts: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
    for task, result in zip(tasks, results):
        counts[task.params["M"]].append((result["open"], result["total"]))
    rows = indicator_rate(counts)
    out.add_csv("indicators.csv", INDICATORS_HEADER, (
        [r.M, r.opened, r.total, r.q_hat, r.low, r.high] for r in rows
    ))
    out.verdicts.append(indicator_verdict(rows))


def _verify_outputs(config: ExperimentConfig, tasks, results, out: RunOutputs) -> None:
    checks = [CheckResult.from_dict(r) for r in results]
    out.checks = checks
    out.add_csv("verify.csv", VERIFY_HEADER, (
        [c.check, c.instances, c.violations, c.censored] for c in checks
    ))
    for c in checks:
        out.violations += c.violations
        out.witnesses.extend(c.witnesses)
        if c.censored:
            out.censored[c.check] = c.censored


def assemble_outputs(config: ExperimentConfig, tasks: Sequence[Task], results: Sequence[Dict]) -> RunOutputs:
    """Turn ordered task results into the tables of the run's kind."""
    out = RunOutputs()
    kind = tasks[0].kind if tasks else config.kind
    if kind in PASSAGE_KINDS:
        _passage_outputs(config, tasks, results, out)
    elif kind == "fm":
        _fm_outputs(config, tasks, results, out)
    elif kind == "perc":
        _perc_outputs(config, tasks, results, out)
    elif kind == "weighted":
        _weighted_outputs(config, tasks, results, out)
    elif kind == "indicators":
        _indicator_outputs(config, tasks, results, out)
    elif kind == "verify":
        _verify_outputs(config, tasks, results, out)
    else:
        raise ValueError(f"Unknown experiment kind {kind!r}")
    return out
