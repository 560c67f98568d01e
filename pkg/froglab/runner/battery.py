"""
FrogLab
Verification Battery v1.2
20260927

Hard invariant and oracle checks run by `froglab verify`.

Each check draws its instances from a Philox stream keyed by the master
seed and the check's task index, and evaluates each instance on its own
WalkField replica. A failing instance is recorded as a witness holding
everything needed to replay it (seed, replica, sites, mask, values).

    engine_oracle          passage_time == dijkstra_oracle
    genealogy              hop sums and parent recursion
    subadditivity          T(0, x+y) <= T(0, x) + T(x, x+y)
    monotonicity_locality  T^[z] >= T, off-path masks, re-keyed far walks
    t2_reduction           genealogy reduction == exhaustive z-sweep
    resample_coupling      resampled start walk never beats T1
    percolation            animal and tessellation bounds, dual searches
    parity                 distance and parity of sampled times

Version History:
- v1.0: Engine/oracle, genealogy, subadditivity checks
- v1.1: Masks, locality, T2, coupling checks
- v1.2: Percolation inequalities and parity sweep
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from froglab.config_manager.experiment import ExperimentConfig
from froglab.core.frogcore import (
    EMPTY_MASK,
    FrogMask,
    NotReached,
    initial_horizon,
    passage_time,
    passage_time_adaptive,
    resampled_passage_time,
    subadditivity_check,
    t1_adaptive,
    t2,
)
from froglab.core.oracle import dijkstra_oracle, t2_sweep
from froglab.core.walkfield import WalkField
from froglab.exceptions import HorizonExhausted
from froglab.percolation.fields import gen_independent_field
from froglab.percolation.inequalities import check_inequalities
from froglab.percolation.paths import (
    max_path_weight,
    max_path_weight_all_sites,
    max_path_weight_exhaustive,
)
from froglab.utils.lattice import SitePoint, add, l1_norm, origin, parity_ok

logger = logging.getLogger(__name__)

# Replica offset per check so checks never share fields
_REPLICA_STRIDE = 1 << 32

# Seed flip used by the fault-injection hook
_CORRUPT_XOR = 0x5DEECE66D

# Witnesses kept per check
MAX_WITNESSES = 20


def task_seed(master_seed: int, index: int) -> int:
    """64-bit seed owned by one task."""
    seq = np.random.SeedSequence(entropy=master_seed, spawn_key=(0x7A5C, index))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


@dataclass
class CheckResult:
    check: str
    instances: int = 0
    violations: int = 0
    censored: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)

    def violate(self, witness: Dict[str, Any]) -> None:
        self.violations += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "instances": self.instances,
            "violations": self.violations,
            "censored": self.censored,
            "witnesses": self.witnesses,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CheckResult":
        return cls(**data)


class _CheckContext:
    """Instance stream and field factory for one check."""

    def __init__(self, config: ExperimentConfig, index: int, check: str):
        self.config = config
        self.index = index
        self.check = check
        seq = np.random.SeedSequence(entropy=config.master_seed, spawn_key=(0xC4EC, index))
        self.rng = np.random.Generator(np.random.Philox(seq))

    def replica(self, i: int) -> int:
        return self.index * _REPLICA_STRIDE + i

    def field(self, d: int, i: int) -> WalkField:
        return WalkField(d, self.config.master_seed, self.replica(i))

    def site(self, d: int, radius: int) -> SitePoint:
        return tuple(int(c) for c in self.rng.integers(-radius, radius + 1, size=d))

    def nonzero_site(self, d: int, radius: int, max_norm: Optional[int] = None) -> SitePoint:
        while True:
            site = self.site(d, radius)
            norm = l1_norm(site)
            if norm > 0 and (max_norm is None or norm <= max_norm):
                return site

    def witness(self, i: int, **values: Any) -> Dict[str, Any]:
        data = {
            "check": self.check,
            "master_seed": self.config.master_seed,
            "replica": self.replica(i),
        }
        for key, value in values.items():
            data[key] = _jsonable(value)
        return data


def _jsonable(value: Any) -> Any:
    if isinstance(value, NotReached):
        return f"NotReached({value.horizon})"
    if isinstance(value, (frozenset, set)):
        return [_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def check_engine_oracle(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    for i in range(count):
        field_ = ctx.field(2, i)
        source = ctx.site(2, 8)
        destination = ctx.site(2, 8)
        size = int(ctx.rng.integers(0, 3))
        removed = set()
        while len(removed) < size:
            z = ctx.site(2, 8)
            if z != source:
                removed.add(z)
        mask = FrogMask(frozenset(removed))
        try:
            sample = passage_time_adaptive(field_, source, destination, mask, cap)
        except HorizonExhausted:
            result.censored += 1
            continue
        result.instances += 1
        oracle_field = field_
        if ctx.config.corrupt_key:
            oracle_field = WalkField(2, ctx.config.master_seed ^ _CORRUPT_XOR, ctx.replica(i))
        expected = dijkstra_oracle(
            oracle_field, source, destination, mask, sample.frontier_radius, sample.value
        )
        if expected != sample.value or not parity_ok(sample.value, source, destination):
            result.violate(ctx.witness(
                i, source=source, destination=destination, mask=removed,
                engine=sample.value, oracle=expected, corrupt_key=ctx.config.corrupt_key,
            ))


def check_genealogy(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    zero = origin(2)
    for i in range(count):
        field_ = ctx.field(2, i)
        destination = ctx.nonzero_site(2, 16, max_norm=32)
        try:
            sample = passage_time_adaptive(field_, zero, destination, EMPTY_MASK, cap)
        except HorizonExhausted:
            result.censored += 1
            continue
        result.instances += 1
        problems = []
        if sum(sample.hop_times) != sample.value:
            problems.append("hop_sum")
        if sample.genealogy[0] != zero or sample.genealogy[-1] != destination:
            problems.append("endpoints")
        for record in sample.activations.values():
            if record.parent is None:
                continue
            parent = sample.activations[record.parent]
            hop = field_.hitting_time(record.parent, record.site, record.time - parent.time)
            if parent.time >= record.time or hop != record.time - parent.time:
                problems.append(f"parent:{list(record.site)}")
                break
        if problems:
            result.violate(ctx.witness(i, destination=destination, value=sample.value, problems=problems))


def _resolve_subadditivity(field_: WalkField, x: SitePoint, y: SitePoint, cap: int):
    horizon = min(initial_horizon(origin(len(x)), add(x, y)) + 4 * l1_norm(x), cap)
    while True:
        witness = subadditivity_check(field_, x, y, horizon)
        if witness.resolved or horizon >= cap:
            return witness
        horizon = min(2 * horizon, cap)


def check_subadditivity(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    for i in range(count):
        field_ = ctx.field(2, i)
        x = ctx.site(2, 12)
        y = ctx.site(2, 12)
        if ctx.config.horizon_cap < max(l1_norm(x), l1_norm(y), l1_norm(add(x, y))):
            result.censored += 1
            continue
        witness = _resolve_subadditivity(field_, x, y, ctx.config.horizon_cap)
        if not witness.resolved:
            result.censored += 1
            continue
        result.instances += 1
        zero = origin(2)
        parity = (
            parity_ok(witness.t_0x, zero, x)
            and parity_ok(witness.t_x_xy, x, add(x, y))
            and parity_ok(witness.t_0_xy, zero, add(x, y))
        )
        if not witness.holds or not parity:
            result.violate(ctx.witness(
                i, x=x, y=y, t_0x=witness.t_0x, t_x_xy=witness.t_x_xy, t_0_xy=witness.t_0_xy,
            ))


def check_monotonicity_locality(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    zero = origin(2)
    for i in range(count):
        field_ = ctx.field(2, i)
        destination = ctx.nonzero_site(2, 8)
        z = ctx.nonzero_site(2, 4)
        try:
            base = passage_time_adaptive(field_, zero, destination, EMPTY_MASK, cap)
            masked = passage_time_adaptive(field_, zero, destination, FrogMask.of(z), cap)
        except HorizonExhausted:
            result.censored += 1
            continue
        result.instances += 1
        problems = []
        if masked.value < base.value:
            problems.append("mask_decreased")
        if z not in base.genealogy[1:-1] and masked.value != base.value:
            problems.append("off_path_changed")
        far = field_.resampled_outside(zero, base.value + 1, salt=1)
        local = passage_time(far, zero, destination, EMPTY_MASK, base.value)
        if local.value != base.value or local.genealogy != base.genealogy:
            problems.append("locality")
        if problems:
            result.violate(ctx.witness(
                i, destination=destination, z=z, value=base.value, masked=masked.value,
                relocated=local.value, problems=problems,
            ))


def check_t2_reduction(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    zero = origin(2)
    for i in range(count):
        field_ = ctx.field(2, i)
        v = ctx.nonzero_site(2, 4, max_norm=4)
        if cap < l1_norm(v):
            result.censored += 1
            continue
        horizon = min(initial_horizon(zero, v), cap)
        reduced = t2(field_, zero, v, horizon)
        while isinstance(reduced, NotReached) and horizon < cap:
            horizon = min(2 * horizon, cap)
            reduced = t2(field_, zero, v, horizon)
        if isinstance(reduced, NotReached):
            result.censored += 1
            continue
        result.instances += 1
        base = passage_time(field_, zero, v, EMPTY_MASK, horizon).value
        swept = t2_sweep(field_, zero, v, base + 2, horizon)
        if swept != reduced or reduced < base:
            result.violate(ctx.witness(i, v=v, t=base, reduced=reduced, swept=swept, horizon=horizon))


def check_resample_coupling(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    for i in range(count):
        field_ = ctx.field(2, i)
        u = ctx.site(2, 4)
        v = ctx.site(2, 6)
        try:
            bound = t1_adaptive(field_, u, v, cap)
        except HorizonExhausted:
            result.censored += 1
            continue
        result.instances += 1
        tilde = resampled_passage_time(field_, u, v, salt=1, horizon=bound)
        if isinstance(tilde, NotReached) or tilde > bound:
            result.violate(ctx.witness(i, u=u, v=v, t1=bound, resampled=tilde))


def check_percolation(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    for i in range(count):
        L = int(ctx.rng.integers(1, 7))
        M = int(ctx.rng.choice([1, 2]))
        p = float(ctx.rng.uniform(0.02, 0.4))
        seed = task_seed(ctx.config.master_seed, ctx.replica(i))
        report = check_inequalities(seed, 2, L, M, p)
        result.instances += 1
        if report.violation:
            result.violate(ctx.witness(
                i, field_seed=seed, L=L, M=M, p=p, x_l=report.animal.x_l,
                n_bound=report.animal.n_bound, tess_bound=report.tessellation.bound,
            ))

    for i in range(ctx.config.count("exhaustive")):
        L = int(ctx.rng.integers(1, 4))
        seed = task_seed(ctx.config.master_seed, ctx.replica(count + i))
        site_field = gen_independent_field(seed, L, 0.4, 2)
        pruned = max_path_weight(site_field, L).weight
        everywhere = max_path_weight_all_sites(site_field, L).weight
        exhaustive = max_path_weight_exhaustive(site_field, L).weight
        result.instances += 1
        if not pruned == everywhere == exhaustive:
            result.violate(ctx.witness(
                count + i, field_seed=seed, L=L, pruned=pruned, all_sites=everywhere,
                exhaustive=exhaustive,
            ))


def check_parity(ctx: _CheckContext, count: int, result: CheckResult) -> None:
    cap = ctx.config.horizon_cap
    for i in range(count):
        d = int(ctx.rng.integers(1, 4))
        field_ = ctx.field(d, i)
        source = ctx.site(d, 6)
        destination = ctx.site(d, 6)
        try:
            sample = passage_time_adaptive(field_, source, destination, EMPTY_MASK, cap)
        except HorizonExhausted:
            result.censored += 1
            continue
        result.instances += 1
        if not parity_ok(sample.value, source, destination):
            result.violate(ctx.witness(i, d=d, source=source, destination=destination, value=sample.value))


CHECKS: Dict[str, Callable[[_CheckContext, int, CheckResult], None]] = {
    "engine_oracle": check_engine_oracle,
    "genealogy": check_genealogy,
    "subadditivity": check_subadditivity,
    "monotonicity_locality": check_monotonicity_locality,
    "t2_reduction": check_t2_reduction,
    "resample_coupling": check_resample_coupling,
    "percolation": check_percolation,
    "parity": check_parity,
}


def run_check(check: str, config: ExperimentConfig, index: int, count: int) -> CheckResult:
    """
    Run one battery check.

    Args:
        check: Name from CHECKS
        config: Experiment configuration (seed, horizon cap, fault hook)
        index: Task index; keys the instance stream
        count: Number of instances

    Returns:
        CheckResult with violation count and witnesses
    """
    if check not in CHECKS:
        raise ValueError(f"Unknown check {check!r}")
    result = CheckResult(check)
    CHECKS[check](_CheckContext(config, index, check), count, result)
    logger.info(
        "%s: %d instances, %d violations, %d censored",
        check, result.instances, result.violations, result.censored,
    )
    return result
