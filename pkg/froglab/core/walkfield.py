"""
FrogLab
Walk Field v1.2
20260912

Seed-keyed simple random walk trajectories on Z^d.

Every site x carries one walk S^x with S^x_0 = x. The j-th increment of
that walk is drawn from a Philox counter-based stream keyed by
(master_seed, replica, salt, d, site, chunk), so a trajectory is a pure
function of its key: it never depends on which other walks were
generated, in which order, or in which process.

Version History:
- v1.0: Keyed trajectories, walk_position / hitting_time
- v1.1: WalkField cache with first_visits for the oracle and indicator fields
- v1.2: Re-keying rules (resampled / resampled_outside) for coupling checks
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Tuple, Union

import numpy as np

from froglab.utils.lattice import (
    MAX_DIMENSION,
    SitePoint,
    l1_distance,
    zigzag,
)

logger = logging.getLogger(__name__)

# Increments drawn per keyed block
CHUNK_SIZE = 128

SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class WalkKey:
    """Identifies one trajectory: identical keys give identical walks."""

    master_seed: int
    replica: int
    site: SitePoint
    salt: int = 0

    @property
    def d(self) -> int:
        return len(self.site)


@dataclass(frozen=True)
class Step:
    index: int
    position: SitePoint


@dataclass(frozen=True)
class NotHit:
    """The target was not visited within the horizon."""

    horizon: int


@lru_cache(maxsize=None)
def _increment_table(d: int) -> np.ndarray:
    """Row k is the unit increment for direction index k (+e1, -e1, +e2, ...)."""
    table = np.zeros((2 * d, d), dtype=np.int64)
    for k in range(2 * d):
        table[k, k // 2] = 1 if k % 2 == 0 else -1
    return table


def _check_key(key: WalkKey) -> None:
    if not 1 <= key.d <= MAX_DIMENSION:
        raise ValueError(f"Dimension d={key.d} outside supported range 1..{MAX_DIMENSION}")
    if not 0 <= key.master_seed < SEED_LIMIT:
        raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {key.master_seed}")
    if key.replica < 0 or key.salt < 0:
        raise ValueError("replica and salt must be non-negative")


def chunk_directions(key: WalkKey, chunk: int) -> np.ndarray:
    """
    Direction indices in [0, 2d) for increments chunk*CHUNK_SIZE+1 ..
    (chunk+1)*CHUNK_SIZE of the keyed walk.
    """
    spawn_key = (key.replica, key.salt, key.d, *(zigzag(c) for c in key.site), chunk)
    seq = np.random.SeedSequence(entropy=key.master_seed, spawn_key=spawn_key)
    generator = np.random.Generator(np.random.Philox(seq))
    return generator.integers(0, 2 * key.d, size=CHUNK_SIZE)


def chunk_positions(key: WalkKey, chunk: int, start: SitePoint) -> np.ndarray:
    """Positions reached by the increments of one chunk, starting from start."""
    steps = _increment_table(key.d)[chunk_directions(key, chunk)]
    return np.cumsum(steps, axis=0) + np.asarray(start, dtype=np.int64)


def walk_stream(key: WalkKey) -> Iterator[Step]:
    """
    Iterate S^site_0, S^site_1, ... of the keyed walk without bound.

    Sequential iteration costs O(1) amortized per step.
    """
    _check_key(key)
    position = key.site
    yield Step(0, position)
    index = 0
    chunk = 0
    while True:
        block = chunk_positions(key, chunk, position)
        for row in block.tolist():
            index += 1
            position = tuple(row)
            yield Step(index, position)
        chunk += 1


def walk_position(key: WalkKey, j: int) -> SitePoint:
    """
    Return S^site_j for the keyed walk.

    Args:
        key: Walk key
        j: Time index (>= 0)

    Returns:
        Lattice site occupied at time j
    """
    if j < 0:
        raise ValueError(f"Time index must be non-negative, got {j}")
    _check_key(key)
    if j == 0:
        return key.site
    position = key.site
    full_chunks, offset = divmod(j - 1, CHUNK_SIZE)
    for chunk in range(full_chunks):
        position = tuple(chunk_positions(key, chunk, position)[-1].tolist())
    return tuple(chunk_positions(key, full_chunks, position)[offset].tolist())


def walk_positions(key: WalkKey, n: int) -> np.ndarray:
    """Array of shape (n + 1, d) holding S_0 .. S_n."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    _check_key(key)
    blocks = [np.asarray([key.site], dtype=np.int64)]
    produced = 0
    chunk = 0
    while produced < n:
        block = chunk_positions(key, chunk, tuple(blocks[-1][-1].tolist()))
        blocks.append(block)
        produced += CHUNK_SIZE
        chunk += 1
    return np.concatenate(blocks)[: n + 1]


def hitting_time(key: WalkKey, target: SitePoint, horizon: int) -> Union[int, NotHit]:
    """
    t(site, target) = min{j <= horizon : S^site_j = target}.

    Returns:
        The hitting time, or NotHit(horizon) when the target is not
        visited by time horizon
    """
    if horizon < 0:
        raise ValueError(f"Horizon must be non-negative, got {horizon}")
    _check_key(key)
    if key.site == target:
        return 0
    target_array = np.asarray(target, dtype=np.int64)
    position = key.site
    chunk = 0
    while chunk * CHUNK_SIZE < horizon:
        block = chunk_positions(key, chunk, position)
        hits = np.flatnonzero((block == target_array).all(axis=1))
        if hits.size:
            j = chunk * CHUNK_SIZE + int(hits[0]) + 1
            return j if j <= horizon else NotHit(horizon)
        position = tuple(block[-1].tolist())
        chunk += 1
    return NotHit(horizon)


class _Trajectory:
    """Lazily extended position list of one keyed walk."""

    __slots__ = ("key", "positions")

    def __init__(self, key: WalkKey):
        self.key = key
        self.positions: List[SitePoint] = [key.site]

    def extend_to(self, j: int) -> None:
        while len(self.positions) <= j:
            chunk = (len(self.positions) - 1) // CHUNK_SIZE
            block = chunk_positions(self.key, chunk, self.positions[-1])
            self.positions.extend(map(tuple, block.tolist()))


# Re-keying rules: ("sites", frozenset, salt) or ("outside", center, radius, salt)
_Rule = Tuple


class WalkField:
    """
    One sample point: the whole family {S^x : x in Z^d} for a replica.

    Trajectories are materialized on demand and cached per site. A field
    instance is owned by a single engine and is not shared across threads.
    """

    def __init__(
        self,
        d: int,
        master_seed: int,
        replica: int = 0,
        rules: Tuple[_Rule, ...] = (),
    ):
        """
        Initialize a walk field

        Args:
            d: Lattice dimension (1..4)
            master_seed: 64-bit experiment seed
            replica: Replica index (independent sample points)
            rules: Re-keying rules, later rules win
        """
        if not 1 <= d <= MAX_DIMENSION:
            raise ValueError(f"Dimension d={d} outside supported range 1..{MAX_DIMENSION}")
        if not 0 <= master_seed < SEED_LIMIT:
            raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
        if replica < 0:
            raise ValueError(f"replica must be non-negative, got {replica}")
        self.d = d
        self.master_seed = master_seed
        self.replica = replica
        self.rules = tuple(rules)
        self._cache: Dict[SitePoint, _Trajectory] = {}

    def __repr__(self) -> str:
        return (
            f"<WalkField(d={self.d}, seed={self.master_seed}, replica={self.replica}, "
            f"rules={len(self.rules)})>"
        )

    def salt_for(self, site: SitePoint) -> int:
        salt = 0
        for rule in self.rules:
            if rule[0] == "sites":
                if site in rule[1]:
                    salt = rule[2]
            elif rule[0] == "outside":
                if l1_distance(site, rule[1]) > rule[2]:
                    salt = rule[3]
        return salt

    def key(self, site: SitePoint) -> WalkKey:
        if len(site) != self.d:
            raise ValueError(f"Site {site} does not belong to Z^{self.d}")
        return WalkKey(self.master_seed, self.replica, tuple(site), self.salt_for(site))

    def trajectory(self, site: SitePoint, length: int) -> List[SitePoint]:
        """
        Cached positions S^site_0 .. S^site_length (the list may be longer;
        callers slice or bound their loops).
        """
        traj = self._cache.get(site)
        if traj is None:
            traj = _Trajectory(self.key(site))
            self._cache[site] = traj
        traj.extend_to(length)
        return traj.positions

    def position(self, site: SitePoint, j: int) -> SitePoint:
        if j < 0:
            raise ValueError(f"Time index must be non-negative, got {j}")
        return self.trajectory(site, j)[j]

    def hitting_time(self, site: SitePoint, target: SitePoint, horizon: int) -> Union[int, NotHit]:
        if horizon < 0:
            raise ValueError(f"Horizon must be non-negative, got {horizon}")
        positions = self.trajectory(site, horizon)
        try:
            return positions.index(target, 0, horizon + 1)
        except ValueError:
            return NotHit(horizon)

    def first_visits(self, site: SitePoint, horizon: int) -> Dict[SitePoint, int]:
        """
        Map every site visited by S^site within the horizon to its hitting
        time t(site, .).
        """
        positions = self.trajectory(site, horizon)
        visits: Dict[SitePoint, int] = {}
        for j in range(horizon + 1):
            visits.setdefault(positions[j], j)
        return visits

    def resampled(self, sites: Iterable[SitePoint], salt: int) -> "WalkField":
        """Same field except fresh, independent walks at the given sites."""
        if salt <= 0:
            raise ValueError("Resampling salt must be positive")
        rule = ("sites", frozenset(tuple(s) for s in sites), salt)
        return WalkField(self.d, self.master_seed, self.replica, self.rules + (rule,))

    def resampled_outside(self, center: SitePoint, radius: int, salt: int) -> "WalkField":
        """Same field except fresh walks at every site farther than radius (l1) from center."""
        if salt <= 0:
            raise ValueError("Resampling salt must be positive")
        rule = ("outside", tuple(center), radius, salt)
        return WalkField(self.d, self.master_seed, self.replica, self.rules + (rule,))

    def clear_cache(self) -> None:
        self._cache.clear()

    @property
    def cached_sites(self) -> int:
        return len(self._cache)
