#!/usr/bin/env python3
"""
FrogLab
Percolation Test v1.3
20260920

Test site fields, path and animal searches, weighted paths and the
tessellation bound
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from froglab.core.frogcore import t1_adaptive
from froglab.core.walkfield import WalkField
from froglab.exceptions import ExactnessCapExceeded
from froglab.percolation.fields import (
    SiteField,
    format_field,
    frog_indicator,
    gen_frog_indicator_field,
    gen_independent_field,
    gen_m_dependent_field,
    gen_t1_indicator_field,
    parse_field,
    read_field,
    window_radius,
    write_field,
)
from froglab.percolation.inequalities import check_inequalities, perc_field_radius
from froglab.percolation.paths import (
    JumpPath,
    L1Weights,
    T1Weights,
    animal_bound_check,
    max_animal_weight,
    max_path_weight,
    max_path_weight_all_sites,
    max_path_weight_exhaustive,
    path_animal,
    weighted_path_max,
    weighted_path_max_exhaustive,
)
from froglab.percolation.tessellation import (
    box_distance,
    group_field_radius,
    group_independence_report,
    group_indicators,
    make_box,
    projected_budget,
    tessellate,
    tessellation_bound_check,
)
from froglab.utils.lattice import box_sites, geodesic, l1_distance, origin


def make_field(L, open_sites=(), d=2, fill=0):
    indicators = {s: fill for s in box_sites(origin(d), L)}
    for s in open_sites:
        indicators[s] = 1
    return SiteField(d, L, 0, 0, indicators)


# Site fields

def test_independent_field_basics():
    a = gen_independent_field(5, 3, 0.3)
    assert a == gen_independent_field(5, 3, 0.3)
    assert len(a) == 49
    assert set(a.indicators.values()) <= {0, 1}
    assert gen_independent_field(5, 3, 0.0).mean() == 0.0
    assert gen_independent_field(5, 3, 1.0).mean() == 1.0
    with pytest.raises(ValueError):
        gen_independent_field(5, 3, 1.5)


def test_independent_field_density():
    site_field = gen_independent_field(11, 50, 0.3)
    assert len(site_field) == 101 ** 2
    sigma = np.sqrt(0.3 * 0.7 / len(site_field))
    assert abs(site_field.mean() - 0.3) <= 3 * sigma


def test_m_dependent_field():
    assert window_radius(1) == 0 and window_radius(4) == 2
    one = gen_m_dependent_field(3, 4, 1, 0.2)
    assert one.density == pytest.approx(0.2)
    two = gen_m_dependent_field(3, 4, 2, 0.2)
    assert two.density == pytest.approx(1 - 0.8 ** 5)
    assert gen_m_dependent_field(3, 4, 2, 1.0).mean() == 1.0
    with pytest.raises(ValueError):
        gen_m_dependent_field(3, 4, 0, 0.2)


def test_window_maximum_only_grows():
    # with a wider window a site can only open, never close, on average
    narrow = np.mean([gen_m_dependent_field(s, 6, 1, 0.1).mean() for s in range(10)])
    wide = np.mean([gen_m_dependent_field(s, 6, 4, 0.1).mean() for s in range(10)])
    assert wide > narrow


def test_field_access_and_restrict():
    site_field = make_field(2, [(0, 0), (2, -2)])
    assert site_field[(2, -2)] == 1
    with pytest.raises(KeyError):
        site_field[(3, 0)]
    assert site_field.open_sites() == [(0, 0), (2, -2)]
    assert site_field.open_sites(1) == [(0, 0)]
    small = site_field.restrict(1)
    assert len(small) == 9 and small.L == 1
    with pytest.raises(ValueError):
        site_field.restrict(3)


def test_field_codec(tmp_path):
    site_field = gen_independent_field(9, 2, 0.5)
    lines = list(format_field(site_field))
    assert lines[0] == "2 2 0 9"
    assert len(lines) == 26
    path = tmp_path / "field.txt"
    write_field(site_field, path)
    assert read_field(path) == site_field
    with pytest.raises(ValueError):
        parse_field("2 2 0\n")
    with pytest.raises(ValueError):
        parse_field("\n".join(lines[:-1]))
    with pytest.raises(ValueError):
        parse_field("1 0 0 1\n0 2\n")


def test_frog_indicator_fields():
    field_ = WalkField(2, 41)
    frog = gen_frog_indicator_field(field_, 2, 3)
    assert len(frog) == 25 and frog.M == 3
    assert set(frog.indicators.values()) <= {0, 1}
    assert gen_t1_indicator_field(field_, 1, 1).mean() == 0.0
    level = gen_t1_indicator_field(field_, 1, 3)
    assert set(level.indicators.values()) <= {0, 1}


def test_frog_indicator_with_unit_range_is_always_open():
    # the first step of the walk at y reaches a neighbour at time 1
    for seed in range(3):
        assert gen_frog_indicator_field(WalkField(2, seed), 3, 1).mean() == 1.0


def test_frog_indicator_ignores_walks_outside_range():
    field_ = WalkField(2, 43)
    for y in [(0, 0), (2, -1), (-3, 4)]:
        for M in (2, 3, 4):
            rekeyed = field_.resampled_outside(y, M, salt=5)
            assert frog_indicator(rekeyed, y, M) == frog_indicator(field_, y, M)


# Path searches

def test_path_weight_hand_fields():
    assert max_path_weight(make_field(2), 2).weight == 0
    assert max_path_weight(make_field(2, fill=1), 2).weight == 3
    assert max_path_weight(make_field(2, [(-2, -2), (2, 2)]), 2).weight == 1
    assert max_path_weight(make_field(2, [(0, 0), (1, 1)]), 2).weight == 2
    result = max_path_weight(make_field(3, [(0, 0), (1, 0), (3, 0), (-3, 3)]), 3)
    assert result.weight == 3
    assert result.path.is_member(3)


def test_searches_agree_on_random_fields():
    for seed in range(6):
        for L in (1, 2, 3):
            site_field = gen_independent_field(seed, L, 0.35)
            pruned = max_path_weight(site_field, L).weight
            assert pruned == max_path_weight_all_sites(site_field, L).weight
            assert pruned == max_path_weight_exhaustive(site_field, L).weight


def test_path_cap():
    site_field = make_field(9)
    with pytest.raises(ExactnessCapExceeded):
        max_path_weight(site_field, 9)
    with pytest.raises(ValueError):
        max_path_weight(make_field(2), 3)


def test_jump_path_membership():
    assert JumpPath(((0, 0), (1, 1), (1, 2))).is_member(3)
    assert not JumpPath(((0, 0), (1, 1), (1, 2))).is_member(2)
    assert not JumpPath(((0, 0), (1, 0), (0, 0))).is_member(5)
    path = JumpPath(((0, 0), (2, 0), (2, 1)))
    assert path.total_jump == 3 and path.max_jump == 2


def test_animal_weight():
    assert max_animal_weight(make_field(3, fill=1), 3) == 4
    assert max_animal_weight(make_field(3), 3) == 0
    assert max_animal_weight(make_field(2, [(0, 0)]), 2) == 1
    assert max_animal_weight(make_field(2, [(1, 0), (2, 0)]), 2) == 2
    # (2, 2) needs 5 cells to connect to the origin
    assert max_animal_weight(make_field(4, [(2, 2)]), 3) == 0
    assert max_animal_weight(make_field(4, [(2, 2)]), 4) == 1


def test_path_animal_size():
    vertices = [(1, 1), (2, -1), (0, -2)]
    animal = path_animal(vertices)
    assert origin(2) in animal
    assert set(vertices) <= animal
    total = l1_distance(origin(2), vertices[0]) + JumpPath(tuple(vertices)).total_jump
    assert len(animal) <= total + 1
    assert len(geodesic((0, 0), (1, 1))) == 3


def test_animal_bound():
    for seed in range(4):
        site_field = gen_independent_field(seed, 6, 0.3)
        exact = animal_bound_check(site_field, 2, cap=7)
        assert exact.exact and exact.holds
        loose = animal_bound_check(site_field, 2, cap=5)
        assert not loose.exact and loose.holds


def test_weighted_path_max():
    assert weighted_path_max(L1Weights(), 2) == 2
    rng = np.random.default_rng(3)
    sites = box_sites(origin(2), 2)
    weights = {(u, v): int(rng.integers(0, 10)) for u in sites for v in sites if u != v}
    assert weighted_path_max(weights, 2) == weighted_path_max_exhaustive(weights, 2)
    weights[(sites[0], sites[1])] = -1
    with pytest.raises(ValueError):
        weighted_path_max(weights, 2)
    with pytest.raises(ExactnessCapExceeded):
        weighted_path_max(L1Weights(), 5)


def test_t1_weights_are_lazy():
    field_ = WalkField(2, 43)
    weights = T1Weights(field_)
    assert len(weights) == 0
    value = weights[((0, 0), (1, 0))]
    assert value == t1_adaptive(field_, (0, 0), (1, 0))
    assert len(weights) == 1
    assert weighted_path_max(weights, 1) >= value


# Tessellation

def test_tessellation_covers_and_separates():
    for M in (1, 2):
        tess = tessellate(M, 8)
        assert len(tess.groups) == 4
        for site in box_sites(origin(2), 8):
            assert tess.containing(site)
        for boxes in tess.groups.values():
            for i, a in enumerate(boxes):
                for b in boxes[i + 1:]:
                    assert box_distance(a, b) >= 3 * M


def test_box_geometry():
    box = make_box(1, 4, (1, 1), (0, -1))
    assert box.lower == (3, -3)
    assert box.upper == (6, 0)
    assert len(box.sites()) == 16
    assert (4, -1) in box and (7, 0) not in box
    assert projected_budget(5, 1) == 2
    assert projected_budget(6, 2) == 1
    assert group_field_radius(1, 2) == 18


def test_group_indicators():
    full = make_field(group_field_radius(1, 1), fill=1)
    values = group_indicators(full, 1, 1, 1)
    assert len(values) == 9 and values.mean() == 1.0
    with pytest.raises(ValueError):
        group_indicators(make_field(5), 1, 1, 1)


def test_tessellation_bound_holds():
    for seed in range(3):
        for M in (1, 2):
            L = 4
            site_field = gen_m_dependent_field(seed, perc_field_radius(2, L, M), M, 0.15)
            report = tessellation_bound_check(site_field, L, M)
            assert report.holds and report.density_holds
            assert len(report.group_maxima) == 4


def test_check_inequalities():
    for seed in range(4):
        report = check_inequalities(seed, 2, 3, 1, 0.2)
        assert not report.violation
        assert report.animal.exact
        assert report.animal.x_l == report.tessellation.x_l


def test_group_independence_report():
    fields = [gen_m_dependent_field(s, group_field_radius(1, 2), 1, 0.05) for s in range(5)]
    report = group_independence_report(fields, 1, 1, 2)
    assert report.pairs == 5 * 2 * 5 * 4
    assert 0.0 <= report.marginal <= 1.0
    assert report.within_three_sigma
    with pytest.raises(ValueError):
        group_independence_report([], 1, 1, 2)
