#!/usr/bin/env python3
"""
FrogLab
Runner Test v1.1
20260928

Test task expansion, the scheduler cache, run outputs and the battery
"""

import json
import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from froglab.config_manager.experiment import BATTERY, ExperimentConfig
from froglab.exceptions import OutputError
from froglab.runner.battery import CHECKS, run_check, task_seed
from froglab.runner.outputs import MANIFEST, RunManifest, read_csv, render_csv
from froglab.runner.pipeline import run_experiment, run_verify
from froglab.runner.scheduler import TaskScheduler, config_fingerprint, resolve_workers
from froglab.runner.tasks import build_tasks, build_verify_tasks, execute_task
from froglab.utils.formatting import format_number

SMALL_COUNTS = {
    "engine_oracle": 3,
    "genealogy": 3,
    "subadditivity": 3,
    "monotonicity_locality": 2,
    "t2_reduction": 2,
    "resample_coupling": 3,
    "percolation": 2,
    "exhaustive": 2,
    "parity": 3,
}


@pytest.fixture(autouse=True)
def no_env_workers(monkeypatch):
    monkeypatch.delenv("FROGLAB_WORKERS", raising=False)


def sim_config(**overrides):
    values = {"master_seed": 1, "kind": "sim", "n_grid": [8], "replicas": 4}
    values.update(overrides)
    return ExperimentConfig(**values)


def verify_config(**overrides):
    values = {"master_seed": 1, "verify_counts": dict(SMALL_COUNTS)}
    values.update(overrides)
    return ExperimentConfig(**values)


class TestFormatting:
    def test_integers_and_bools(self):
        assert format_number(12) == "12"
        assert format_number(True) == "1"
        assert format_number(False) == "0"

    def test_reals(self):
        assert format_number(0.5) == "0.5"
        assert format_number(1 / 3) == "0.333333333"
        assert format_number(0.0) == "0"

    def test_missing(self):
        assert format_number(None) == "NA"

    def test_render_csv(self):
        text = render_csv(["a", "b"], [[1, None], [0.25, "x"]])
        assert text == "a,b\n1,NA\n0.25,x\n"


class TestTasks:
    def test_sim_expansion(self):
        tasks = build_tasks(sim_config())
        assert len(tasks) == 4
        assert tasks[0].name == "sim-000000"
        assert [t.params["replica"] for t in tasks] == [0, 1, 2, 3]

    def test_scaling_sweeps_dims(self):
        config = ExperimentConfig(master_seed=1, kind="scaling", dims=[1, 2], n_grid=[4, 8], replicas=3)
        tasks = build_tasks(config)
        assert len(tasks) == 12
        assert [t.index for t in tasks] == list(range(12))

    def test_perc_expansion(self):
        config = ExperimentConfig(
            master_seed=1, kind="perc", L_grid=[2], M_grid=[1, 2], p_grid=[0.1], instances=3,
        )
        tasks = build_tasks(config)
        assert len(tasks) == 6
        assert {t.params["M"] for t in tasks} == {1, 2}

    def test_verify_tasks_follow_battery(self):
        config = verify_config(battery=["parity", "genealogy"])
        tasks = build_verify_tasks(config)
        assert [t.params["check"] for t in tasks] == ["parity", "genealogy"]
        assert tasks[1].params["count"] == SMALL_COUNTS["genealogy"]

    def test_task_seed_is_keyed(self):
        assert task_seed(1, 0) == task_seed(1, 0)
        assert task_seed(1, 0) != task_seed(1, 1)
        assert task_seed(1, 0) != task_seed(2, 0)

    def test_execute_sim_task(self):
        config = sim_config()
        result = execute_task(build_tasks(config)[0], config)
        assert result["value"] >= 8
        assert (result["value"] - 8) % 2 == 0

    def test_execute_is_deterministic(self):
        config = sim_config()
        task = build_tasks(config)[2]
        assert execute_task(task, config) == execute_task(task, config)


class TestScheduler:
    def test_env_workers_override(self, monkeypatch):
        config = sim_config(workers=3)
        assert resolve_workers(config) == 3
        monkeypatch.setenv("FROGLAB_WORKERS", "2")
        assert resolve_workers(config) == 2

    def test_fingerprint_ignores_workers(self):
        assert config_fingerprint(sim_config(workers=1)) == config_fingerprint(sim_config(workers=4))
        assert config_fingerprint(sim_config()) != config_fingerprint(sim_config(master_seed=2))

    def test_cache_reuse(self, tmp_path):
        config = sim_config()
        tasks = build_tasks(config)
        first = TaskScheduler(config, tmp_path).run(tasks)
        assert (tmp_path / "tasks" / f"{tasks[0].name}.json").exists()

        again = TaskScheduler(config, tmp_path)
        assert again.run(tasks) == first
        assert again.reused == len(tasks)

    def test_stale_cache_is_ignored(self, tmp_path):
        tasks = build_tasks(sim_config())
        TaskScheduler(sim_config(), tmp_path).run(tasks)
        other = TaskScheduler(sim_config(master_seed=2), tmp_path)
        other.run(tasks)
        assert other.reused == 0

    def test_worker_count_does_not_change_results(self):
        config = sim_config()
        tasks = build_tasks(config)
        serial = TaskScheduler(config, workers=1).run(tasks)
        pooled = TaskScheduler(config, workers=2).run(tasks)
        assert serial == pooled

    def test_progress_callback(self):
        config = sim_config()
        tasks = build_tasks(config)
        seen = []
        TaskScheduler(config).run(tasks, seen.append)
        assert sorted(t.index for t in seen) == [0, 1, 2, 3]


class TestRunExperiment:
    def test_sim_samples(self, tmp_path):
        summary = run_experiment(sim_config(), output_dir=tmp_path)
        header, rows = read_csv(tmp_path / "samples.csv")
        assert header == ["task", "replica", "n", "dx1", "dx2", "T", "path_len", "max_jump", "frontier_radius"]
        assert len(rows) == 4
        assert not summary.partial
        assert "samples.csv" in summary.manifest.files

    def test_outputs_are_reproducible(self, tmp_path):
        run_experiment(sim_config(), output_dir=tmp_path / "a")
        run_experiment(sim_config(), output_dir=tmp_path / "b", workers=2)
        first = (tmp_path / "a" / "samples.csv").read_bytes()
        second = (tmp_path / "b" / "samples.csv").read_bytes()
        assert first == second

    def test_manifest(self, tmp_path):
        run_experiment(sim_config(), output_dir=tmp_path)
        assert (tmp_path / MANIFEST).is_file()
        manifest = RunManifest.read(tmp_path)
        assert manifest.command == "run"
        assert manifest.config["master_seed"] == 1
        assert "workers" not in manifest.config
        assert len(manifest.tasks) == 4
        assert manifest.tasks[0]["name"] == "sim-000000"

    def test_censored_run_is_partial(self, tmp_path):
        summary = run_experiment(sim_config(horizon_cap=4), output_dir=tmp_path)
        assert summary.partial
        assert summary.manifest.censored["passage"] == 4
        _, rows = read_csv(tmp_path / "samples.csv")
        assert all(row[5] == "NA" for row in rows)

    def test_scaling_writes_per_dimension_samples(self, tmp_path):
        config = ExperimentConfig(master_seed=1, kind="scaling", dims=[1, 2], n_grid=[4], replicas=3)
        run_experiment(config, output_dir=tmp_path)
        assert (tmp_path / "samples_d1.csv").exists()
        assert (tmp_path / "samples_d2.csv").exists()
        _, rows = read_csv(tmp_path / "scaling.csv")
        assert [row[0] for row in rows] == ["1", "2"]

    def test_scaling_with_single_replica(self, tmp_path):
        config = ExperimentConfig(master_seed=1, kind="scaling", n_grid=[4], replicas=1)
        summary = run_experiment(config, output_dir=tmp_path)
        _, rows = read_csv(tmp_path / "scaling.csv")
        assert len(rows) == 1
        assert rows[0][4] == "NA"
        assert any(v["name"] == "replicas d=2" for v in summary.manifest.verdicts)

    def test_perc_has_no_violations(self, tmp_path):
        config = ExperimentConfig(
            master_seed=1, kind="perc", L_grid=[2], M_grid=[1], p_grid=[0.2], instances=3,
        )
        summary = run_experiment(config, output_dir=tmp_path)
        _, rows = read_csv(tmp_path / "perc.csv")
        assert len(rows) == 3
        assert all(row[-1] == "0" for row in rows)
        assert summary.violations == 0
        verdicts = {v["name"]: v["status"] for v in summary.manifest.verdicts}
        assert verdicts["animal bound"] == "PASS"

    def test_perc_flags_witness_bound(self, tmp_path):
        config = ExperimentConfig(
            master_seed=1, kind="perc", L_grid=[4], M_grid=[1], p_grid=[0.2], instances=2,
        )
        summary = run_experiment(config, output_dir=tmp_path)
        verdict = next(v for v in summary.manifest.verdicts if v["name"] == "animal bound")
        assert verdict["status"] == "WARN"
        assert "L=4 (2 rows)" in verdict["detail"]

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "taken"
        blocker.write_text("not a directory")
        with pytest.raises(OutputError):
            run_experiment(sim_config(), output_dir=blocker)


class TestBattery:
    @pytest.mark.parametrize("check", list(BATTERY))
    def test_check_passes(self, check):
        result = run_check(check, verify_config(), BATTERY.index(check), SMALL_COUNTS[check])
        assert result.check == check
        assert result.violations == 0
        assert result.instances + result.censored >= SMALL_COUNTS[check]

    def test_every_check_is_registered(self):
        assert set(CHECKS) == set(BATTERY)

    @pytest.mark.parametrize("check", [c for c in BATTERY if c != "percolation"])
    def test_tiny_cap_censors_instead_of_failing(self, check):
        config = verify_config(horizon_cap=2)
        result = run_check(check, config, BATTERY.index(check), SMALL_COUNTS[check])
        assert result.violations == 0
        assert result.instances + result.censored == SMALL_COUNTS[check]

    def test_corrupt_key_is_caught(self):
        config = verify_config(corrupt_key=True)
        result = run_check("engine_oracle", config, 0, 8)
        assert result.violations > 0
        witness = result.witnesses[0]
        assert witness["corrupt_key"] is True
        assert witness["engine"] != witness["oracle"]

    def test_run_verify(self, tmp_path):
        summary = run_verify(verify_config(), output_dir=tmp_path)
        assert summary.violations == 0
        assert not summary.partial
        _, rows = read_csv(tmp_path / "verify.csv")
        assert [row[0] for row in rows] == list(BATTERY)
        assert not (tmp_path / "witnesses.json").exists()

    def test_run_verify_writes_witnesses(self, tmp_path):
        config = verify_config(battery=["engine_oracle"], corrupt_key=True, verify_counts={"engine_oracle": 8})
        summary = run_verify(config, output_dir=tmp_path)
        assert summary.violations > 0
        witnesses = json.loads((tmp_path / "witnesses.json").read_text())
        assert witnesses[0]["check"] == "engine_oracle"
