#!/usr/bin/env python3
"""
FrogLab
Statistics Test v1.2
20260924

Test estimators, soft verdicts and the experiment aggregates
"""

import sys
from pathlib import Path
from types import SimpleNamespace

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from froglab.stats.estimators import (
    PASS,
    WARN,
    SampleSet,
    bootstrap_ci,
    moments,
    nested_consistency,
    tail_curve,
    trend_verdict,
    wilson_interval,
)
from froglab.stats.experiments import (
    FmMeasurement,
    PassageMeasurement,
    PathLengthStats,
    fm_variance_gap,
    indicator_rate,
    indicator_verdict,
    measure_fm,
    measure_indicators,
    measure_passage,
    path_length_stats,
    path_verdicts,
    scaling_row,
    scaling_table,
    scaling_verdicts,
    tail_rows,
    time_constant_estimate,
    weighted_growth,
)
from froglab.utils.lattice import parity_ok


def _measurement(n, value, replica=0, d=2, path_length=3, max_jump=2):
    return PassageMeasurement(replica, d, n, (n, 0), value, path_length, max_jump, n)


# Estimators

def test_sample_set_rejects_non_finite():
    with pytest.raises(ValueError):
        SampleSet("bad", (1.0, float("nan")))
    assert len(SampleSet("ok", (1.0, 2.0, 3.0)).head(2)) == 2


def test_moments():
    stats = moments(SampleSet("m", (1.0, 2.0, 3.0, 4.0)), resamples=500, seed=1)
    assert stats.mean == pytest.approx(2.5)
    assert stats.variance == pytest.approx(5.0 / 3.0)
    assert stats.ci_mean[0] <= 2.5 <= stats.ci_mean[1]
    assert stats.mean_half_width >= 0
    with pytest.raises(ValueError):
        moments(SampleSet("one", (1.0,)))


def test_bootstrap_is_keyed():
    values = [float(v) for v in range(30)]
    a = bootstrap_ci(values, lambda x: float(x.mean()), 200, seed=4, label="a")
    assert a == bootstrap_ci(values, lambda x: float(x.mean()), 200, seed=4, label="a")
    assert a != bootstrap_ci(values, lambda x: float(x.mean()), 200, seed=4, label="b")
    with pytest.raises(ValueError):
        bootstrap_ci([], lambda x: 0.0)


def test_wilson_interval():
    low, high = wilson_interval(0, 10)
    assert low == 0.0 and 0.0 < high < 0.5
    low, high = wilson_interval(10, 10)
    assert high == 1.0 and low > 0.5
    low, high = wilson_interval(30, 100)
    assert low < 0.3 < high
    with pytest.raises(ValueError):
        wilson_interval(1, 0)
    with pytest.raises(ValueError):
        wilson_interval(5, 4)


def test_tail_curve():
    points = tail_curve(range(1, 11), [0, 5, 11])
    assert [p.survival for p in points] == [1.0, 0.6, 0.0]
    assert all(p.low <= p.survival <= p.high for p in points)
    with pytest.raises(ValueError):
        tail_curve([1, 2], [3, 1])


def test_trend_verdicts():
    assert trend_verdict("a", [3.0, 2.0, 1.0], [0.1] * 3).status == PASS
    assert trend_verdict("a", [1.0, 2.0, 3.0], [0.1] * 3).status == WARN
    assert trend_verdict("a", [1.0, 1.1], [0.2, 0.2], "non_increasing").passed
    assert trend_verdict("f", [1.0, 1.1, 0.95], [0.2] * 3, "flat").passed
    assert trend_verdict("f", [1.0, 3.0], [0.2] * 2, "flat").status == WARN
    assert trend_verdict("d", [3.0, 2.0, 2.0], [0.0] * 3, "decreasing").status == WARN
    assert trend_verdict("x", [1.0], [0.0]).status == WARN
    with pytest.raises(ValueError):
        trend_verdict("x", [1.0, 2.0], [0.0], "flat")
    with pytest.raises(ValueError):
        trend_verdict("x", [1.0, 2.0], [0.0, 0.0], "sideways")


def test_nested_consistency():
    samples = SampleSet("n", tuple(float(v % 7) for v in range(40)))
    assert nested_consistency(samples, resamples=200) is True
    assert nested_consistency(SampleSet("s", (1.0, 2.0))) is None


# Experiments

def test_measure_passage():
    m = measure_passage(2, 6, "e1", 1, 0, 1 << 12, with_hops=True)
    assert m.destination == (6, 0)
    assert not m.censored
    assert parity_ok(m.value, (0, 0), (6, 0))
    assert m.exact_hops == m.path_length
    assert PassageMeasurement.from_dict(m.to_dict()) == m


def test_measure_passage_censored():
    m = measure_passage(2, 40, "e1", 1, 0, 40)
    assert m.censored and m.value is None


def test_time_constant_estimate():
    assert time_constant_estimate([10, 20], 5) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        time_constant_estimate([], 5)


def test_scaling_table_from_collector():
    config = SimpleNamespace(dimensions=[1, 2], n_grid=[4, 8], resamples=100, master_seed=0)
    data = {
        (d, n): [_measurement(n, n * d + k, replica=k, d=d) for k in range(6)]
        for d in (1, 2) for n in (4, 8)
    }
    rows = scaling_table(config, lambda d, n: data[(d, n)])
    assert [(r.d, r.n) for r in rows] == [(1, 4), (1, 8), (2, 4), (2, 8)]
    row = rows[0]
    assert row.mean == pytest.approx(4 + 2.5)
    assert row.var == pytest.approx(3.5)
    assert row.var_over_n == pytest.approx(3.5 / 4)
    assert row.kappa_hat == pytest.approx(6.5 / 4)
    verdicts = scaling_verdicts(rows)
    assert {v.name for v in verdicts} == {"var_over_n d=1", "var_over_n d=2", "nested d=1", "nested d=2"}
    assert all(r.nested is not None for r in rows)


def test_scaling_row_drops_censored():
    measurements = [_measurement(4, v) for v in (4, 6, 8)] + [_measurement(4, None)]
    row = scaling_row(2, 4, measurements, 100, 0)
    assert row.replicas == 3 and row.censored == 1


def test_scaling_row_with_one_survivor():
    measurements = [_measurement(4, 6), _measurement(4, None), _measurement(4, None)]
    row = scaling_row(2, 4, measurements, 100, 0)
    assert row.replicas == 1 and row.censored == 2
    assert row.mean == pytest.approx(6.0)
    assert row.kappa_hat == pytest.approx(1.5)
    assert row.var is None and row.ci_var is None and row.var_over_n_half_width is None
    empty = scaling_row(2, 8, [_measurement(8, None)], 100, 0)
    assert empty.mean is None and empty.kappa_hat is None


def test_scaling_verdicts_flag_thin_rows():
    full = scaling_row(2, 4, [_measurement(4, v) for v in (4, 6, 8, 10)], 100, 0)
    thin = scaling_row(2, 8, [_measurement(8, 12)], 100, 0)
    verdicts = {v.name: v for v in scaling_verdicts([full, thin])}
    assert verdicts["replicas d=2"].status == WARN
    assert "n=8" in verdicts["replicas d=2"].detail
    assert verdicts["var_over_n d=2"].status == WARN


def test_wilson_interval_endpoints_are_exact():
    for trials in (1, 7, 10, 1000):
        assert wilson_interval(0, trials)[0] == 0.0
        assert wilson_interval(trials, trials)[1] == 1.0


def test_tail_rows():
    measurements = [_measurement(10, v) for v in (10, 12, 14, 20)]
    rows = tail_rows(measurements, [1.0, 1.5])
    assert [r["survival"] for r in rows] == [1.0, 0.25]
    assert tail_rows([_measurement(10, None)], [1.0]) == []


def test_path_length_stats_and_verdicts():
    a = path_length_stats([_measurement(10, 12, path_length=5, max_jump=j) for j in (1, 2, 2, 5)], 10)
    assert a.count == 4
    assert a.mean_l == pytest.approx(0.5)
    assert a.jump_histogram == {1: 1, 2: 2, 5: 1}
    survival = a.jump_survival()
    assert survival[1] == 1.0 and survival[3] == 0.25
    b = path_length_stats([_measurement(20, 24, path_length=9, max_jump=j) for j in (1, 6)], 20)
    verdicts = path_verdicts([a, b])
    assert verdicts[0].name == "path_length_overlap"
    assert PathLengthStats(1, 1, 0, 0, 0, 0).jump_survival() == {}
    with pytest.raises(ValueError):
        path_length_stats([_measurement(10, None)], 10)


def test_fm_measurement_and_gap():
    m = measure_fm(2, (16, 0), 3, 0, 1 << 14)
    assert not m.censored
    assert m.f >= 16
    measurements = [FmMeasurement(r, 20 + 2 * (r % 4), 21 + 0.5 * (r % 3)) for r in range(12)]
    report = fm_variance_gap((16, 0), measurements, 200, 0)
    assert report.m == 2 and report.replicas == 12
    assert report.gap == pytest.approx(report.var_t - report.var_f)
    assert report.ci_gap[0] <= report.ci_gap[1]
    with pytest.raises(ValueError):
        fm_variance_gap((16, 0), measurements[:1], 200, 0)


def test_indicator_rate():
    opened, total = measure_indicators(2, 1, 2, 5, 0)
    assert total == 9 and 0 <= opened <= total
    rows = indicator_rate({1: [(5, 10), (3, 10)], 2: [(1, 10), (1, 10)]})
    assert [r.q_hat for r in rows] == [0.4, 0.1]
    assert indicator_verdict(rows).passed


def test_weighted_growth():
    rows, verdict = weighted_growth({2: [4, 6, 5], 3: [6, 7, 8]}, 100, 0)
    assert [r.L for r in rows] == [2, 3]
    assert rows[0].ratio == pytest.approx(2.5)
    assert verdict.name == "weighted_growth"
