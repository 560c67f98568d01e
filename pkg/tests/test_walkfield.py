#!/usr/bin/env python3
"""
FrogLab
Walk Field Test v1.2
20260912

Test keyed trajectories, hitting times and re-keying rules
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from froglab.core.walkfield import (
    CHUNK_SIZE,
    NotHit,
    WalkField,
    WalkKey,
    chunk_directions,
    hitting_time,
    walk_position,
    walk_positions,
    walk_stream,
)
from froglab.utils.lattice import l1_distance, parity_ok


def test_trajectory_is_deterministic():
    a = WalkField(2, 7, 0).trajectory((1, -2), 300)[:301]
    b = WalkField(2, 7, 0).trajectory((1, -2), 300)[:301]
    assert a == b
    assert a[0] == (1, -2)


def test_steps_are_unit():
    positions = WalkField(3, 11).trajectory((0, 0, 0), 400)
    assert all(l1_distance(p, q) == 1 for p, q in zip(positions, positions[1:]))


def test_fields_differ_by_seed_and_replica():
    base = WalkField(2, 5, 0).trajectory((0, 0), 200)[:201]
    assert WalkField(2, 6, 0).trajectory((0, 0), 200)[:201] != base
    assert WalkField(2, 5, 1).trajectory((0, 0), 200)[:201] != base


def test_position_access_agrees_across_chunks():
    key = WalkKey(3, 0, (2, 0))
    field_ = WalkField(2, 3, 0)
    positions = walk_positions(key, 2 * CHUNK_SIZE + 5)
    assert positions.shape == (2 * CHUNK_SIZE + 6, 2)
    for j in (0, 1, CHUNK_SIZE - 1, CHUNK_SIZE, CHUNK_SIZE + 1, 2 * CHUNK_SIZE + 5):
        assert walk_position(key, j) == tuple(positions[j].tolist())
        assert field_.position((2, 0), j) == walk_position(key, j)


def test_walk_stream_prefix():
    key = WalkKey(9, 2, (0,))
    stream = walk_stream(key)
    for j in range(CHUNK_SIZE + 3):
        step = next(stream)
        assert step.index == j
        assert step.position == walk_position(key, j)


def test_hitting_time_matches_trajectory():
    field_ = WalkField(2, 21)
    positions = field_.trajectory((0, 0), 500)
    for target in [(1, 0), (0, 2), (3, -1), (0, 0)]:
        expected = next((j for j in range(501) if positions[j] == target), None)
        got = field_.hitting_time((0, 0), target, 500)
        keyed = hitting_time(field_.key((0, 0)), target, 500)
        if expected is None:
            assert got == NotHit(500) == keyed
        else:
            assert got == expected == keyed
            assert parity_ok(got, (0, 0), target)


def test_first_visits_are_hitting_times():
    field_ = WalkField(2, 4)
    visits = field_.first_visits((1, 1), 200)
    assert visits[(1, 1)] == 0
    for site, t in visits.items():
        assert field_.hitting_time((1, 1), site, 200) == t
        assert parity_ok(t, (1, 1), site)


def test_resampled_sites_only():
    field_ = WalkField(2, 13)
    fresh = field_.resampled([(0, 0)], salt=1)
    assert fresh.trajectory((0, 0), 200)[:201] != field_.trajectory((0, 0), 200)[:201]
    assert fresh.trajectory((1, 0), 200)[:201] == field_.trajectory((1, 0), 200)[:201]


def test_resampled_outside_keeps_inner_walks():
    field_ = WalkField(2, 13)
    far = field_.resampled_outside((0, 0), 2, salt=3)
    assert far.trajectory((1, 1), 150)[:151] == field_.trajectory((1, 1), 150)[:151]
    assert far.trajectory((3, 0), 150)[:151] != field_.trajectory((3, 0), 150)[:151]
    assert far.salt_for((2, 0)) == 0 and far.salt_for((2, 1)) == 3


def test_cache():
    field_ = WalkField(1, 1)
    field_.trajectory((0,), 10)
    field_.trajectory((4,), 10)
    assert field_.cached_sites == 2
    field_.clear_cache()
    assert field_.cached_sites == 0


def test_invalid_arguments():
    with pytest.raises(ValueError):
        WalkField(5, 1)
    with pytest.raises(ValueError):
        WalkField(2, -1)
    with pytest.raises(ValueError):
        WalkField(2, 1).hitting_time((0, 0), (1, 0), -1)
    with pytest.raises(ValueError):
        WalkField(2, 1).resampled([(0, 0)], salt=0)
    with pytest.raises(ValueError):
        WalkField(2, 1).key((0, 0, 0))
    with pytest.raises(ValueError):
        walk_position(WalkKey(1, 0, (0, 0)), -1)


def test_increments_cover_all_directions():
    positions = np.asarray(WalkField(2, 17).trajectory((0, 0), 1000)[:1001])
    steps = {tuple(s) for s in np.diff(positions, axis=0).tolist()}
    assert steps == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_directions_are_uniform():
    chunks = 800
    draws = np.concatenate([chunk_directions(WalkKey(23, 0, (0, 0)), c) for c in range(chunks)])
    total = chunks * CHUNK_SIZE
    sigma = np.sqrt(total * 0.25 * 0.75)
    counts = np.bincount(draws, minlength=4)
    assert len(counts) == 4
    assert np.all(np.abs(counts - total / 4) <= 3 * sigma)


def test_neighbouring_sites_step_independently():
    # same first direction at x and x + e1 happens with probability 1/4
    first = {
        (i, j): int(chunk_directions(WalkKey(29, 0, (i, j)), 0)[0])
        for i in range(100)
        for j in range(100)
    }
    pairs = [(first[(i, j)], first[(i + 1, j)]) for i in range(99) for j in range(100)]
    same = sum(a == b for a, b in pairs)
    sigma = np.sqrt(len(pairs) * 0.25 * 0.75)
    assert abs(same - len(pairs) / 4) <= 3 * sigma
