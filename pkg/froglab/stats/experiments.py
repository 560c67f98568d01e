"""
FrogLab
Experiments v1.2
20260924

Per-replica measurements and the analytics that aggregate them.

Each measure_* function evaluates one replica on its own WalkField and
returns a small JSON-ready record; the runner schedules them in parallel
and the aggregate functions below turn the records into tables and soft
verdicts. Aggregates only see records ordered by task index, so every
table is a pure function of the configuration.

Version History:
- v1.0: Passage measurements, scaling_table
- v1.1: path_length_stats, fm_variance_gap, tails
- v1.2: indicator_rate, weighted_growth
"""

import logging
from dataclasses import asdict, dataclass, field
from math import log
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from froglab.core.frogcore import (
    EMPTY_MASK,
    NotReached,
    fm_radius,
    hop_statistics,
    initial_horizon,
    passage_time_adaptive,
    spatial_average,
)
from froglab.core.walkfield import WalkField
from froglab.exceptions import HorizonExhausted
from froglab.percolation.fields import gen_frog_indicator_field
from froglab.percolation.paths import T1Weights, weighted_path_max
from froglab.stats.estimators import (
    PASS,
    WARN,
    SampleSet,
    Verdict,
    bootstrap_ci,
    moments,
    nested_consistency,
    tail_curve,
    trend_verdict,
    wilson_interval,
)
from froglab.utils.lattice import SitePoint, direction_vector, l1_norm, origin, scale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PassageMeasurement:
    """T(0, n z) on one replica; value is None when censored at the cap."""

    replica: int
    d: int
    n: int
    destination: SitePoint
    value: Optional[int]
    path_length: int = 0
    max_jump: int = 0
    frontier_radius: int = 0
    exact_hops: int = 0
    hop_sum_sq: int = 0

    @property
    def censored(self) -> bool:
        return self.value is None

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["destination"] = list(self.destination)
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "PassageMeasurement":
        return cls(**dict(data, destination=tuple(data["destination"])))


def measure_passage(
    d: int,
    n: int,
    direction: str,
    master_seed: int,
    replica: int,
    cap: int,
    with_hops: bool = False,
) -> PassageMeasurement:
    """Evaluate T(0, n z) on replica's field under the adaptive horizon."""
    target = scale(direction_vector(direction, d), n)
    field_ = WalkField(d, master_seed, replica)
    try:
        sample = passage_time_adaptive(field_, origin(d), target, EMPTY_MASK, cap)
    except HorizonExhausted:
        logger.warning("replica %d: T(0, %s) censored at cap %d", replica, target, cap)
        return PassageMeasurement(replica, d, n, target, None)
    exact_hops = 0
    hop_sum_sq = 0
    if with_hops:
        hops = hop_statistics(field_, sample)
        exact_hops = sum(hops.exact_hops.values())
        hop_sum_sq = hops.sum_sq
    return PassageMeasurement(
        replica=replica,
        d=d,
        n=n,
        destination=target,
        value=sample.value,
        path_length=sample.path_length,
        max_jump=sample.max_jump,
        frontier_radius=sample.frontier_radius,
        exact_hops=exact_hops,
        hop_sum_sq=hop_sum_sq,
    )


def time_constant_estimate(values: Sequence[float], n: int) -> float:
    """kappa_hat_n = mean(T(n z)) / n"""
    if n < 1 or not values:
        raise ValueError("time_constant_estimate needs n >= 1 and at least one value")
    return float(np.mean(values)) / n


@dataclass(frozen=True)
class ScalingRow:
    d: int
    n: int
    replicas: int
    mean: Optional[float]
    var: Optional[float]
    var_over_n: Optional[float]
    var_logn_over_n: Optional[float]
    kappa_hat: Optional[float]
    ci_mean: Optional[float]
    ci_var: Optional[float]
    censored: int = 0
    nested: Optional[bool] = None

    @property
    def var_over_n_half_width(self) -> Optional[float]:
        return None if self.ci_var is None else self.ci_var / self.n


def scaling_row(
    d: int,
    n: int,
    measurements: Sequence[PassageMeasurement],
    resamples: int,
    seed: int,
) -> ScalingRow:
    """Moments of uncensored T(0, n z) values; censored replicas are counted and excluded."""
    values = [m.value for m in measurements if not m.censored]
    censored = len(measurements) - len(values)
    samples = SampleSet(f"T/d={d}/n={n}", tuple(float(v) for v in values), {"d": d, "n": n})
    if len(values) < 2:
        # moments need two values; keep the row with NA spread
        logger.warning("d=%d n=%d: %d uncensored replica(s), variance left NA", d, n, len(values))
        mean = float(np.mean(values)) if values else None
        return ScalingRow(
            d=d, n=n, replicas=len(values), mean=mean, var=None, var_over_n=None,
            var_logn_over_n=None, kappa_hat=None if mean is None else mean / n,
            ci_mean=None, ci_var=None, censored=censored,
        )
    stats = moments(samples, resamples, seed)
    return ScalingRow(
        d=d,
        n=n,
        replicas=len(values),
        mean=stats.mean,
        var=stats.variance,
        var_over_n=stats.variance / n,
        var_logn_over_n=stats.variance * log(n) / n,
        kappa_hat=stats.mean / n,
        ci_mean=stats.mean_half_width,
        ci_var=stats.var_half_width,
        censored=censored,
        nested=nested_consistency(samples, resamples, seed),
    )


Collector = Callable[[int, int], List[PassageMeasurement]]


def sequential_collector(config) -> Collector:
    """Collect replicas 0..replicas-1 in process."""

    def collect(d: int, n: int) -> List[PassageMeasurement]:
        return [
            measure_passage(d, n, config.direction, config.master_seed, r, config.horizon_cap)
            for r in range(config.replicas)
        ]

    return collect


def scaling_table(config, collect: Optional[Collector] = None) -> List[ScalingRow]:
    """
    One ScalingRow per (d, n) over config.dimensions x config.n_grid.

    Args:
        config: ExperimentConfig
        collect: Supplies the measurements for (d, n); defaults to sequential evaluation
    """
    collect = collect or sequential_collector(config)
    rows = []
    for d in config.dimensions:
        for n in config.n_grid:
            rows.append(scaling_row(d, n, collect(d, n), config.resamples, config.master_seed))
    return rows


def scaling_verdicts(rows: Sequence[ScalingRow]) -> List[Verdict]:
    """
    Soft checks: var/n non-increasing for d >= 2, flat for d = 1,
    shrinking kappa_hat increments along doublings of n, and agreement of
    each half-sample mean with the full-sample mean.
    """
    verdicts = []
    for d in sorted({row.d for row in rows}):
        series = sorted((row for row in rows if row.d == d), key=lambda r: r.n)
        thin = [str(r.n) for r in series if r.var is None]
        if thin:
            verdicts.append(Verdict(
                f"replicas d={d}", WARN, f"fewer than two uncensored replicas at n={', '.join(thin)}"
            ))
            series = [r for r in series if r.var is not None]
        trend = "flat" if d == 1 else "non_increasing"
        verdicts.append(
            trend_verdict(
                f"var_over_n d={d}",
                [r.var_over_n for r in series],
                [r.var_over_n_half_width for r in series],
                trend,
            )
        )
        by_n = {r.n: r.kappa_hat for r in series}
        steps = [abs(by_n[2 * n] - by_n[n]) for n in sorted(by_n) if 2 * n in by_n]
        if len(steps) >= 2:
            verdicts.append(trend_verdict(f"kappa_hat d={d}", steps, [0.0] * len(steps), "decreasing"))
        checked = [r for r in series if r.nested is not None]
        if checked:
            drifted = [str(r.n) for r in checked if not r.nested]
            if drifted:
                verdicts.append(Verdict(f"nested d={d}", WARN, f"half-sample mean outside CI at n={', '.join(drifted)}"))
            else:
                verdicts.append(Verdict(f"nested d={d}", PASS, f"half-sample means agree at {len(checked)} n values"))
    return verdicts


def tail_rows(
    measurements: Sequence[PassageMeasurement], factors: Sequence[float]
) -> List[Dict]:
    """Survival of T(0, n z) at thresholds factor * n."""
    values = [m.value for m in measurements if not m.censored]
    if not values:
        return []
    n = measurements[0].n
    d = measurements[0].d
    thresholds = sorted(f * n for f in factors)
    return [
        {"d": d, "n": n, "threshold": p.threshold, "survival": p.survival, "low": p.low, "high": p.high}
        for p in tail_curve(values, thresholds)
    ]


@dataclass(frozen=True)
class PathLengthStats:
    n: int
    count: int
    min_l: float
    mean_l: float
    max_l: float
    mean_t: float
    jump_histogram: Dict[int, int] = field(default_factory=dict)
    exact_hop_rate: float = 0.0

    def jump_survival(self) -> Dict[int, float]:
        """P(max jump >= L) for L = 1 .. largest observed jump."""
        if not self.jump_histogram:
            return {}
        top = max(self.jump_histogram)
        return {
            L: sum(c for j, c in self.jump_histogram.items() if j >= L) / self.count
            for L in range(1, top + 1)
        }


def path_length_stats(samples: Sequence, n: int) -> PathLengthStats:
    """
    Genealogy length l / n statistics and the maximal-jump histogram.

    samples: PassageSample or PassageMeasurement objects at a common n
    """
    resolved = [s for s in samples if not _is_censored(s)]
    if not resolved:
        raise ValueError("path_length_stats needs at least one resolved sample")
    lengths = [s.path_length / n for s in resolved]
    histogram: Dict[int, int] = {}
    for s in resolved:
        histogram[s.max_jump] = histogram.get(s.max_jump, 0) + 1
    hops = sum(getattr(s, "exact_hops", 0) for s in resolved)
    total_hops = sum(s.path_length for s in resolved)
    return PathLengthStats(
        n=n,
        count=len(resolved),
        min_l=min(lengths),
        mean_l=float(np.mean(lengths)),
        max_l=max(lengths),
        mean_t=float(np.mean([_value(s) for s in resolved])) / n,
        jump_histogram=dict(sorted(histogram.items())),
        exact_hop_rate=hops / total_hops if total_hops else 0.0,
    )


def _value(sample) -> int:
    return sample.value


def _is_censored(sample) -> bool:
    return sample.value is None or isinstance(sample.value, NotReached)


def path_verdicts(stats: Sequence[PathLengthStats], jump_floor: int = 4) -> List[Verdict]:
    """[min l/n, max l/n] intervals overlap across n; jump survival decreases beyond jump_floor."""
    verdicts = []
    if len(stats) >= 2:
        low = max(s.min_l for s in stats)
        high = min(s.max_l for s in stats)
        status = "PASS" if low <= high else "WARN"
        verdicts.append(Verdict("path_length_overlap", status, f"common range [{low:.6g}, {high:.6g}]"))
    pooled: Dict[int, int] = {}
    count = 0
    for s in stats:
        count += s.count
        for j, c in s.jump_histogram.items():
            pooled[j] = pooled.get(j, 0) + c
    if pooled:
        merged = PathLengthStats(0, count, 0.0, 0.0, 0.0, 0.0, pooled)
        tail = [v for L, v in merged.jump_survival().items() if L >= jump_floor and v > 0]
        verdicts.append(trend_verdict("max_jump_survival", tail, [0.0] * len(tail), "decreasing"))
    return verdicts


@dataclass(frozen=True)
class FmMeasurement:
    replica: int
    t: Optional[int]
    f: Optional[float]

    @property
    def censored(self) -> bool:
        return self.t is None or self.f is None


def measure_fm(d: int, x: SitePoint, master_seed: int, replica: int, cap: int) -> FmMeasurement:
    """T(0, x) and F_m(x) on the same replica field."""
    field_ = WalkField(d, master_seed, replica)
    try:
        t = passage_time_adaptive(field_, origin(d), x, EMPTY_MASK, cap).value
    except HorizonExhausted:
        return FmMeasurement(replica, None, None)
    horizon = min(initial_horizon(origin(d), x), cap)
    while True:
        result = spatial_average(field_, x, horizon)
        if not isinstance(result, NotReached):
            return FmMeasurement(replica, t, float(result.value))
        if horizon >= cap:
            return FmMeasurement(replica, t, None)
        horizon = min(2 * horizon, cap)


@dataclass(frozen=True)
class FmGapReport:
    x: SitePoint
    m: int
    replicas: int
    var_t: float
    var_f: float
    gap: float
    gap_normalized: float
    ci_gap: Tuple[float, float]

    @property
    def sd_consistent(self) -> bool:
        """sd(F_m) <= sd(T) within the gap CI."""
        return self.ci_gap[1] >= 0.0


def fm_variance_gap(
    x: SitePoint, measurements: Sequence[FmMeasurement], resamples: int, seed: int
) -> FmGapReport:
    """Var(T(x)) against Var(F_m) on coupled fields, with a paired bootstrap CI."""
    kept = [m for m in measurements if not m.censored]
    if len(kept) < 2:
        raise ValueError("fm_variance_gap needs at least two resolved replicas")
    t = np.array([m.t for m in kept], dtype=float)
    f = np.array([m.f for m in kept], dtype=float)
    var_t = float(np.var(t, ddof=1))
    var_f = float(np.var(f, ddof=1))
    pairs = np.column_stack([t, f])

    def gap_of(indices: np.ndarray) -> float:
        rows = pairs[indices.astype(int)]
        return float(np.var(rows[:, 0], ddof=1) - np.var(rows[:, 1], ddof=1))

    ci = bootstrap_ci(np.arange(len(kept)), gap_of, resamples, seed, label=f"fm/{x}")
    gap = var_t - var_f
    norm = l1_norm(x)
    return FmGapReport(
        x=tuple(x),
        m=fm_radius(x),
        replicas=len(kept),
        var_t=var_t,
        var_f=var_f,
        gap=gap,
        gap_normalized=abs(gap) / norm ** 0.75,
        ci_gap=ci,
    )


def measure_indicators(d: int, L: int, M: int, master_seed: int, replica: int) -> Tuple[int, int]:
    """(open, total) of the frog indicator field on B(L)."""
    site_field = gen_frog_indicator_field(WalkField(d, master_seed, replica), L, M)
    return sum(site_field.indicators.values()), len(site_field)


@dataclass(frozen=True)
class IndicatorRate:
    M: int
    opened: int
    total: int
    q_hat: float
    low: float
    high: float


def indicator_rate(counts: Dict[int, Sequence[Tuple[int, int]]]) -> List[IndicatorRate]:
    """q_hat_M = P(I_y = 1) pooled over replicas, with Wilson intervals."""
    rows = []
    for M in sorted(counts):
        opened = sum(c[0] for c in counts[M])
        total = sum(c[1] for c in counts[M])
        low, high = wilson_interval(opened, total)
        rows.append(IndicatorRate(M, opened, total, opened / total, low, high))
    return rows


def indicator_verdict(rows: Sequence[IndicatorRate]) -> Verdict:
    return trend_verdict(
        "indicator_rate",
        [r.q_hat for r in rows],
        [(r.high - r.low) / 2 for r in rows],
        "non_increasing",
    )


def measure_weighted(d: int, L: int, master_seed: int, replica: int, cap: int) -> int:
    """Exact max over P_L of the sum of realized T1 hop weights."""
    return weighted_path_max(T1Weights(WalkField(d, master_seed, replica), cap), L, d)


@dataclass(frozen=True)
class WeightedGrowthRow:
    L: int
    replicas: int
    mean: float
    ci_mean: float
    ratio: float


def weighted_growth(
    values: Dict[int, Sequence[int]], resamples: int, seed: int
) -> Tuple[List[WeightedGrowthRow], Verdict]:
    """Mean weighted path maximum per L and the ratio mean / L."""
    rows = []
    for L in sorted(values):
        data = [float(v) for v in values[L]]
        if len(data) >= 2:
            stats = moments(SampleSet(f"weighted/L={L}", tuple(data)), resamples, seed)
            mean, half = stats.mean, stats.mean_half_width
        else:
            mean, half = float(np.mean(data)), 0.0
        rows.append(WeightedGrowthRow(L, len(data), mean, half, mean / L))
    verdict = trend_verdict(
        "weighted_growth",
        [r.ratio for r in rows],
        [r.ci_mean / r.L for r in rows],
        "non_increasing",
    )
    return rows, verdict
