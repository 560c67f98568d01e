"""
FrogLab
Path Search v1.3
20260919

Exact maximal weights over jump paths and lattice animals.

P_L is the family of paths of distinct sites of B(L) whose l1 jumps sum
to at most L. Jumps may be longer than one unit and paths need not start
at the origin; a single site is a path with total jump 0.

    max_path_weight     X_L, branch and bound over open sites
    max_animal_weight   N_L, connected sets containing the origin
    weighted_path_max   max sum of hop weights over P_L

Every search has an exactness cap and a plain exhaustive counterpart
used to cross-check it on tiny instances.

Version History:
- v1.0: Branch and bound X_L with open-site restriction
- v1.1: Redelmeier animal enumeration for N_L
- v1.2: Exhaustive and all-sites dual searches
- v1.3: Weighted paths and lazily evaluated T1 weights
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Sequence, Set, Tuple

from froglab.core.frogcore import DEFAULT_HORIZON_CAP, t1_adaptive
from froglab.core.walkfield import WalkField
from froglab.exceptions import ExactnessCapExceeded, InvariantViolation
from froglab.percolation.fields import SiteField
from froglab.utils.lattice import (
    SitePoint,
    box_sites,
    geodesic,
    l1_distance,
    origin,
    unit_neighbors,
)

logger = logging.getLogger(__name__)

PATH_CAP = 8
ANIMAL_CELL_CAP = 10
WEIGHTED_CAP = 4

Pair = Tuple[SitePoint, SitePoint]


@dataclass(frozen=True)
class JumpPath:
    vertices: Tuple[SitePoint, ...]

    @property
    def total_jump(self) -> int:
        return sum(l1_distance(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    @property
    def max_jump(self) -> int:
        return max((l1_distance(a, b) for a, b in zip(self.vertices, self.vertices[1:])), default=0)

    def weight(self, site_field: SiteField) -> int:
        return sum(site_field[v] for v in self.vertices)

    def is_member(self, L: int) -> bool:
        """Membership in P_L: distinct vertices inside B(L), total jump <= L."""
        if len(set(self.vertices)) != len(self.vertices):
            return False
        if any(max((abs(c) for c in v), default=0) > L for v in self.vertices):
            return False
        return self.total_jump <= L


@dataclass(frozen=True)
class PathSearchResult:
    weight: int
    path: JumpPath
    nodes: int = 0


def _check_cap(operation: str, requested: int, cap: int) -> None:
    if requested > cap:
        raise ExactnessCapExceeded(operation, requested, cap)


def _require_cover(site_field: SiteField, L: int) -> None:
    if not site_field.covers(L):
        raise ValueError(f"Field radius {site_field.L} does not cover B({L})")


class _BranchAndBound:
    """
    Depth-first search over distinct-vertex paths.

    The bound for a partial path is its weight plus the number of unvisited
    open sites within the remaining budget of the last vertex, capped by
    the budget itself (every further vertex costs at least one unit).
    """

    def __init__(self, candidates: Sequence[SitePoint], open_set: Set[SitePoint], L: int):
        self.candidates = list(candidates)
        self.open_set = open_set
        self.L = L
        self.best = 0
        self.best_path: Tuple[SitePoint, ...] = ()
        self.nodes = 0
        self.ceiling = min(L + 1, len(open_set))

    def _bound(self, last: SitePoint, weight: int, budget: int, visited: Set[SitePoint]) -> int:
        reachable = 0
        for site in self.open_set:
            if site not in visited and l1_distance(site, last) <= budget:
                reachable += 1
                if reachable >= budget:
                    break
        return weight + min(reachable, budget)

    def _extend(self, path: List[SitePoint], visited: Set[SitePoint], weight: int, budget: int) -> None:
        self.nodes += 1
        if weight > self.best:
            self.best = weight
            self.best_path = tuple(path)
        if self.best >= self.ceiling or budget == 0:
            return
        last = path[-1]
        if self._bound(last, weight, budget, visited) <= self.best:
            return
        for site in self.candidates:
            if site in visited:
                continue
            cost = l1_distance(site, last)
            if cost > budget:
                continue
            path.append(site)
            visited.add(site)
            self._extend(path, visited, weight + (site in self.open_set), budget - cost)
            visited.discard(site)
            path.pop()
            if self.best >= self.ceiling:
                return

    def run(self) -> PathSearchResult:
        for start in self.candidates:
            self._extend([start], {start}, int(start in self.open_set), self.L)
            if self.best >= self.ceiling:
                break
        return PathSearchResult(self.best, JumpPath(self.best_path), self.nodes)


def max_path_weight(site_field: SiteField, L: int, cap: int = PATH_CAP) -> PathSearchResult:
    """
    X_L = max over P_L of the number of open sites on the path.

    Only open sites are used as vertices: deleting closed vertices from a
    path never increases its total jump.

    Raises:
        ExactnessCapExceeded: If L is above the cap
    """
    _check_cap("max_path_weight", L, cap)
    _require_cover(site_field, L)
    open_sites = site_field.open_sites(L)
    result = _BranchAndBound(open_sites, set(open_sites), L).run()
    logger.debug("X_%d = %d after %d nodes", L, result.weight, result.nodes)
    return result


def max_path_weight_all_sites(site_field: SiteField, L: int, cap: int = PATH_CAP) -> PathSearchResult:
    """Same search with closed sites allowed as vertices."""
    _check_cap("max_path_weight_all_sites", L, cap)
    _require_cover(site_field, L)
    return _BranchAndBound(
        box_sites(origin(site_field.d), L), set(site_field.open_sites(L)), L
    ).run()


def _all_paths(sites: Sequence[SitePoint], L: int) -> Iterator[Tuple[SitePoint, ...]]:
    def extend(path: List[SitePoint], budget: int) -> Iterator[Tuple[SitePoint, ...]]:
        yield tuple(path)
        for site in sites:
            if site in path:
                continue
            cost = l1_distance(site, path[-1])
            if cost <= budget:
                path.append(site)
                yield from extend(path, budget - cost)
                path.pop()

    for start in sites:
        yield from extend([start], L)


def max_path_weight_exhaustive(site_field: SiteField, L: int) -> PathSearchResult:
    """Un-pruned enumeration of every member of P_L. Tiny instances only."""
    _require_cover(site_field, L)
    best = PathSearchResult(0, JumpPath(()))
    count = 0
    for path in _all_paths(box_sites(origin(site_field.d), L), L):
        count += 1
        weight = sum(site_field[v] for v in path)
        if weight > best.weight:
            best = PathSearchResult(weight, JumpPath(path))
    return PathSearchResult(best.weight, best.path, count)


def max_animal_weight(site_field: SiteField, L: int, cap: int = ANIMAL_CELL_CAP) -> int:
    """
    N_L = max number of open sites in a connected set A containing the
    origin with #A <= L + 1.

    Connected sets are enumerated once each with Redelmeier's untried-set
    scheme; branches that cannot beat the incumbent even if every further
    cell were open are cut.
    """
    cells = L + 1
    _check_cap("max_animal_weight", cells, cap)
    _require_cover(site_field, L)
    root = origin(site_field.d)
    best = site_field[root]
    seen: Set[SitePoint] = {root, *unit_neighbors(root)}

    def grow(untried: List[SitePoint], size: int, weight: int) -> None:
        nonlocal best
        if weight > best:
            best = weight
        if size == cells or weight + (cells - size) <= best:
            return
        untried = list(untried)
        while untried:
            cell = untried.pop()
            fresh = [n for n in unit_neighbors(cell) if n not in seen]
            seen.update(fresh)
            grow(untried + fresh, size + 1, weight + site_field[cell])
            seen.difference_update(fresh)

    grow(list(unit_neighbors(root)), 1, best)
    return best


@dataclass(frozen=True)
class AnimalBoundReport:
    """
    X_L against N_{(d+1)L}.

    When (d+1)L + 1 cells exceed the animal cap the right side is a lower
    bound on N_{(d+1)L}: the weight of the animal made of geodesics from
    the origin through the vertices of the optimal path.
    """

    L: int
    x_l: int
    n_bound: int
    exact: bool

    @property
    def holds(self) -> bool:
        return self.x_l <= self.n_bound


def path_animal(vertices: Sequence[SitePoint]) -> Set[SitePoint]:
    """Connected set containing the origin and every vertex of the path."""
    if not vertices:
        return set()
    animal: Set[SitePoint] = set(geodesic(origin(len(vertices[0])), vertices[0]))
    for a, b in zip(vertices, vertices[1:]):
        animal.update(geodesic(a, b))
    return animal


def animal_bound_check(site_field: SiteField, L: int, cap: int = ANIMAL_CELL_CAP) -> AnimalBoundReport:
    """Check X_L <= N_{(d+1)L}; the field must cover B((d+1)L)."""
    far = (site_field.d + 1) * L
    _require_cover(site_field, far)
    best = max_path_weight(site_field, L)
    if far + 1 <= cap:
        return AnimalBoundReport(L, best.weight, max_animal_weight(site_field, far, cap), True)
    animal = path_animal(best.path.vertices)
    if len(animal) > far + 1:
        raise InvariantViolation(
            f"Path animal of {len(animal)} cells exceeds {far + 1}",
            {"L": L, "path": [list(v) for v in best.path.vertices]},
        )
    weight = sum(site_field[c] for c in animal) if animal else site_field[origin(site_field.d)]
    return AnimalBoundReport(L, best.weight, weight, False)


def _hop_ceiling(pair_max: Dict[int, int], budget: int) -> List[int]:
    """g[b] = best sum of hop weights over jump sequences of total <= b."""
    g = [0] * (budget + 1)
    for b in range(1, budget + 1):
        g[b] = g[b - 1]
        for k, w in pair_max.items():
            if k <= b:
                g[b] = max(g[b], w + g[b - k])
    return g


def weighted_path_max(
    weights: Mapping[Pair, int], L: int, d: int = 2, cap: int = WEIGHTED_CAP
) -> int:
    """
    Exact max over P_L of sum of weights[(y_i, y_{i+1})].

    Weights must be non-negative. The search is pruned with a knapsack
    ceiling built from the heaviest pair at each jump length.
    """
    _check_cap("weighted_path_max", L, cap)
    sites = box_sites(origin(d), L)
    pair_max: Dict[int, int] = {}
    for u in sites:
        for v in sites:
            k = l1_distance(u, v)
            if 0 < k <= L:
                w = weights[(u, v)]
                if w < 0:
                    raise ValueError(f"Negative weight {w} for {(u, v)}")
                pair_max[k] = max(pair_max.get(k, 0), w)
    ceiling = _hop_ceiling(pair_max, L)
    best = 0

    def extend(path: List[SitePoint], total: int, budget: int) -> None:
        nonlocal best
        best = max(best, total)
        if total + ceiling[budget] <= best:
            return
        last = path[-1]
        for site in sites:
            if site in path:
                continue
            cost = l1_distance(site, last)
            if cost <= budget:
                path.append(site)
                extend(path, total + weights[(last, site)], budget - cost)
                path.pop()

    for start in sites:
        extend([start], 0, L)
    return best


def weighted_path_max_exhaustive(weights: Mapping[Pair, int], L: int, d: int = 2) -> int:
    best = 0
    for path in _all_paths(box_sites(origin(d), L), L):
        best = max(best, sum(weights[(a, b)] for a, b in zip(path, path[1:])))
    return best


class T1Weights(Mapping):
    """Read-only mapping (u, v) -> T1(u, v) evaluated lazily on one field."""

    def __init__(self, field_: WalkField, cap: int = DEFAULT_HORIZON_CAP):
        self.field = field_
        self.cap = cap
        self._values: Dict[Pair, int] = {}

    def __getitem__(self, pair: Pair) -> int:
        value = self._values.get(pair)
        if value is None:
            value = t1_adaptive(self.field, pair[0], pair[1], self.cap)
            self._values[pair] = value
        return value

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)


class L1Weights(Mapping):
    """(u, v) -> |u - v|_1"""

    def __getitem__(self, pair: Pair) -> int:
        return l1_distance(pair[0], pair[1])

    def __iter__(self) -> Iterator[Pair]:
        return iter(())

    def __len__(self) -> int:
        return 0

