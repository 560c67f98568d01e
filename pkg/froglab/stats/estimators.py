"""
FrogLab
Estimators v1.1
20260922

Moments with bootstrap confidence intervals, Wilson intervals, empirical
tail curves and the PASS/WARN verdicts used by soft trend checks.

Bootstrap resampling draws from a keyed Philox stream, so every interval
is reproducible from (seed, label).

Version History:
- v1.0: moments, bootstrap_ci, tail_curve
- v1.1: wilson_interval, trend_verdict
"""

import logging
import zlib
from dataclasses import dataclass, field
from math import isfinite, sqrt
from statistics import NormalDist
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_RESAMPLES = 1000
DEFAULT_LEVEL = 0.95

Interval = Tuple[float, float]

PASS = "PASS"
WARN = "WARN"


@dataclass(frozen=True)
class SampleSet:
    """
    Labelled sample values with enough metadata (d, x or n, replica range,
    master seed) to regenerate them.
    """

    label: str
    values: Tuple[float, ...]
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if any(not isfinite(v) for v in self.values):
            raise ValueError(f"SampleSet {self.label!r} holds non-finite values")

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def head(self, count: int) -> "SampleSet":
        """First count values (nested subsample)."""
        meta = dict(self.meta, replicas=count)
        return SampleSet(self.label, self.values[:count], meta)


@dataclass(frozen=True)
class Moments:
    n: int
    mean: float
    variance: float
    ci_mean: Interval
    ci_var: Interval

    @property
    def mean_half_width(self) -> float:
        return (self.ci_mean[1] - self.ci_mean[0]) / 2

    @property
    def var_half_width(self) -> float:
        return (self.ci_var[1] - self.ci_var[0]) / 2


def _label_key(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def bootstrap_rng(seed: int, label: str = "") -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(_label_key(label),))
    return np.random.Generator(np.random.Philox(seq))


def bootstrap_ci(
    values: Sequence[float],
    stat: Callable[[np.ndarray], float],
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    level: float = DEFAULT_LEVEL,
    label: str = "",
) -> Interval:
    """
    Percentile bootstrap interval for stat.

    Args:
        values: Observations
        stat: Statistic of a 1-d array
        resamples: Bootstrap replicates
        seed: RNG seed
        level: Coverage level
        label: Extra stream key so different statistics draw different resamples

    Returns:
        (low, high)
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("bootstrap_ci needs at least one value")
    rng = bootstrap_rng(seed, label)
    rows = rng.integers(0, data.size, size=(resamples, data.size))
    estimates = np.array([stat(data[row]) for row in rows])
    alpha = (1.0 - level) / 2
    low, high = np.quantile(estimates, [alpha, 1.0 - alpha])
    return float(low), float(high)


def _sample_variance(data: np.ndarray) -> float:
    return float(np.var(data, ddof=1)) if data.size > 1 else 0.0


def moments(
    samples: SampleSet,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    level: float = DEFAULT_LEVEL,
) -> Moments:
    """
    Mean, unbiased variance and bootstrap intervals for both.

    Raises:
        ValueError: With fewer than two samples
    """
    if len(samples) < 2:
        raise ValueError(f"SampleSet {samples.label!r} has {len(samples)} values, need >= 2")
    data = samples.array()
    mean = float(np.mean(data))
    variance = _sample_variance(data)
    ci_mean = bootstrap_ci(data, np.mean, resamples, seed, level, samples.label + ":mean")
    ci_var = bootstrap_ci(data, _sample_variance, resamples, seed, level, samples.label + ":var")
    return Moments(len(samples), mean, variance, ci_mean, ci_var)


def _z_value(level: float) -> float:
    return NormalDist().inv_cdf(0.5 + level / 2)


def wilson_interval(successes: int, trials: int, level: float = DEFAULT_LEVEL) -> Interval:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("wilson_interval needs trials > 0")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes {successes} outside 0..{trials}")
    z = _z_value(level)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    low = 0.0 if successes == 0 else max(0.0, center - half)
    high = 1.0 if successes == trials else min(1.0, center + half)
    return low, high


@dataclass(frozen=True)
class TailPoint:
    threshold: float
    survival: float
    low: float
    high: float


def tail_curve(
    values: Sequence[float], thresholds: Sequence[float], level: float = DEFAULT_LEVEL
) -> List[TailPoint]:
    """Empirical P(X >= t) with Wilson intervals, one point per threshold."""
    if list(thresholds) != sorted(thresholds):
        raise ValueError("tail_curve thresholds must be sorted")
    data = np.sort(np.asarray(values, dtype=float))
    if data.size == 0:
        raise ValueError("tail_curve needs at least one value")
    points = []
    for t in thresholds:
        count = int(data.size - np.searchsorted(data, t, side="left"))
        low, high = wilson_interval(count, data.size, level)
        points.append(TailPoint(t, count / data.size, low, high))
    return points


@dataclass(frozen=True)
class Verdict:
    """Outcome of a soft check: never a hard failure."""

    name: str
    status: str
    detail: str

    @property
    def passed(self) -> bool:
        return self.status == PASS


def trend_verdict(
    name: str,
    values: Sequence[float],
    half_widths: Sequence[float],
    trend: str = "non_increasing",
) -> Verdict:
    """
    Judge a sequence of estimates with CI half-widths.

    trend:
        non_increasing  each step up stays within the combined half-widths
        flat            every pair of intervals overlaps
        decreasing      strictly decreasing point estimates
    """
    if len(values) != len(half_widths):
        raise ValueError("values and half_widths differ in length")
    if len(values) < 2:
        return Verdict(name, WARN, "fewer than two points")

    breaks: List[str] = []
    pairs = list(zip(values, half_widths))
    if trend == "non_increasing":
        for i, ((a, ha), (b, hb)) in enumerate(zip(pairs, pairs[1:])):
            if b > a + ha + hb:
                breaks.append(f"step {i}: {b:.6g} > {a:.6g} beyond CI")
    elif trend == "flat":
        for i, (a, ha) in enumerate(pairs):
            for j, (b, hb) in enumerate(pairs[i + 1:], start=i + 1):
                if abs(a - b) > ha + hb:
                    breaks.append(f"points {i},{j} do not overlap")
    elif trend == "decreasing":
        for i, (a, b) in enumerate(zip(values, values[1:])):
            if b >= a:
                breaks.append(f"step {i}: {b:.6g} >= {a:.6g}")
    else:
        raise ValueError(f"Unknown trend {trend!r}")

    if breaks:
        return Verdict(name, WARN, "; ".join(breaks))
    return Verdict(name, PASS, f"{trend} over {len(values)} points")


def nested_consistency(
    samples: SampleSet, resamples: int = DEFAULT_RESAMPLES, seed: int = 0
) -> Optional[bool]:
    """Do the first half and the whole sample agree within combined mean CIs?"""
    half = len(samples) // 2
    if half < 2:
        return None
    first = moments(samples.head(half), resamples, seed)
    full = moments(samples, resamples, seed)
    return abs(first.mean - full.mean) <= first.mean_half_width + full.mean_half_width
