#!/usr/bin/env python3
"""
FrogLab
Lattice Helpers Test v1.0
20260911

Test l1 geometry, boxes, neighbours, parity and direction parsing
"""

import sys
from pathlib import Path

import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from froglab.utils.lattice import (
    box_size,
    box_sites,
    direction_vector,
    geodesic,
    in_box,
    l1_ball_sites,
    l1_distance,
    l1_norm,
    origin,
    parity_ok,
    parse_site,
    unit_neighbors,
    zigzag,
)


def test_norms():
    assert l1_norm((3, -4)) == 7
    assert l1_distance((1, 1), (-1, 2)) == 3
    assert origin(3) == (0, 0, 0)


def test_box_sites_sorted_and_sized():
    sites = box_sites((0, 0), 2)
    assert len(sites) == box_size(2, 2) == 25
    assert sites == sorted(sites)
    assert all(in_box(s, (0, 0), 2) for s in sites)
    assert box_sites((0,), -1) == []


def test_l1_ball():
    assert len(l1_ball_sites((0, 0), 1)) == 5
    assert len(l1_ball_sites((0, 0), 2)) == 13
    assert len(l1_ball_sites((5,), 0)) == 1


def test_unit_neighbors_order():
    assert unit_neighbors((0, 0)) == [(1, 0), (-1, 0), (0, 1), (0, -1)]
    assert len(unit_neighbors((0, 0, 0, 0))) == 8


def test_parity():
    assert parity_ok(4, (0, 0), (2, 0))
    assert parity_ok(2, (0, 0), (2, 0))
    assert not parity_ok(3, (0, 0), (2, 0))
    assert not parity_ok(0, (0, 0), (2, 0))


def test_geodesic():
    path = geodesic((0, 0), (2, -1))
    assert path == [(0, 0), (1, 0), (2, 0), (2, -1)]
    assert len(geodesic((3, 3), (3, 3))) == 1
    assert all(l1_distance(a, b) == 1 for a, b in zip(path, path[1:]))


def test_directions():
    assert direction_vector("e2", 3) == (0, 1, 0)
    assert direction_vector(" E1 ", 1) == (1,)
    assert direction_vector("1,1", 2) == (1, 1)
    assert parse_site("3 -2") == (3, -2)
    with pytest.raises(ValueError):
        direction_vector("e3", 2)
    with pytest.raises(ValueError):
        direction_vector("0,0", 2)
    with pytest.raises(ValueError):
        direction_vector("1,1,1", 2)


def test_zigzag_is_injective():
    values = [zigzag(c) for c in range(-20, 21)]
    assert sorted(values) == list(range(41))
    assert zigzag(0) == 0 and zigzag(-1) == 1 and zigzag(1) == 2

