"""
FrogLab
Frog Engine v1.3
20260914

Exact first passage times T(x, y) of the frog model on a realized WalkField.

The engine merges the first-visit event streams of all active frogs in a
priority queue ordered by (time, origin site, visited site). Popping an
event for a passive, unmasked site activates it; its frog then starts
contributing events. Events come out in the order synchronous stepping
would produce them, and the origin ordering makes the parent of a site
the lexicographically smallest origin among frogs first occupying it at
its activation step.

A frog activated at time s is only walked as far as the current event
time requires, so only sites within l1 distance horizon of the source
are ever touched.

Version History:
- v1.0: Synchronous passage_time with genealogy extraction
- v1.1: Heap-merged first-visit streams (same results, lazy frogs)
- v1.2: FrogMask, removed_passage_time, T1, T2, spatial averages
- v1.3: activation_table for indicator fields, adaptive horizon helper
"""

import heapq
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from froglab.core.walkfield import WalkField
from froglab.exceptions import HorizonExhausted
from froglab.utils.lattice import (
    SitePoint,
    add,
    box_sites,
    l1_distance,
    l1_norm,
    origin,
    unit_neighbors,
)

logger = logging.getLogger(__name__)

DEFAULT_HORIZON_CAP = 1 << 16


@dataclass(frozen=True)
class FrogMask:
    """Sites whose frogs are removed. Removed sites may still end a chain."""

    removed: FrozenSet[SitePoint] = frozenset()

    @classmethod
    def of(cls, *sites: SitePoint) -> "FrogMask":
        return cls(frozenset(tuple(s) for s in sites))

    def __contains__(self, site: object) -> bool:
        return site in self.removed

    def __len__(self) -> int:
        return len(self.removed)

    def union(self, other: "FrogMask") -> "FrogMask":
        return FrogMask(self.removed | other.removed)


EMPTY_MASK = FrogMask()


@dataclass(frozen=True)
class NotReached:
    """The destination was not activated by the horizon."""

    horizon: int


@dataclass(frozen=True)
class ActivationRecord:
    site: SitePoint
    time: int
    parent: Optional[SitePoint]


PassageValue = Union[int, NotReached]


@dataclass(frozen=True)
class PassageSample:
    """
    Result of one passage-time computation.

    Invariants: sum(hop_times) == value; max_jump is the largest l1 gap
    between consecutive genealogy sites.
    """

    source: SitePoint
    destination: SitePoint
    value: PassageValue
    genealogy: Tuple[SitePoint, ...]
    hop_times: Tuple[int, ...]
    max_jump: int
    frontier_radius: int
    horizon: int
    activations: Dict[SitePoint, ActivationRecord] = field(
        default_factory=dict, compare=False, repr=False
    )

    @property
    def reached(self) -> bool:
        return not isinstance(self.value, NotReached)

    @property
    def path_length(self) -> int:
        """l(gamma): number of hops of the genealogy chain."""
        return len(self.hop_times)


@dataclass(frozen=True)
class SpatialAverageResult:
    value: Fraction
    m: int
    terms: int
    term_values: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SubadditivityWitness:
    """T(0, x+y) <= T(0, x) + T(x, x+y) evaluated on one field."""

    x: SitePoint
    y: SitePoint
    t_0x: PassageValue
    t_x_xy: PassageValue
    t_0_xy: PassageValue

    @property
    def resolved(self) -> bool:
        return all(isinstance(v, int) for v in (self.t_0x, self.t_x_xy, self.t_0_xy))

    @property
    def holds(self) -> Optional[bool]:
        if not self.resolved:
            return None
        return self.t_0_xy <= self.t_0x + self.t_x_xy


def _frog_events(
    field_: WalkField,
    origin_site: SitePoint,
    start_time: int,
    horizon: int,
    activated: Dict[SitePoint, ActivationRecord],
    removed: FrozenSet[SitePoint],
    terminals: FrozenSet[SitePoint],
) -> Iterator[Tuple[int, SitePoint]]:
    """
    First visits of one frog to sites that can still change state.

    Skipping sites already activated is exact: activation is monotone and
    the stream is only advanced after its previous event was processed.
    """
    limit = horizon - start_time
    if limit <= 0:
        return
    # the cached list grows in place one chunk at a time
    positions = field_.trajectory(origin_site, 1)
    for j in range(1, limit + 1):
        if j >= len(positions):
            field_.trajectory(origin_site, j)
        site = positions[j]
        if site in activated:
            continue
        if site in removed and site not in terminals:
            continue
        yield start_time + j, site


def _run_front(
    field_: WalkField,
    source: SitePoint,
    mask: FrogMask,
    horizon: int,
    destination: Optional[SitePoint] = None,
    terminals: FrozenSet[SitePoint] = frozenset(),
) -> Dict[SitePoint, ActivationRecord]:
    """
    Run activation dynamics from source until destination is reached or
    the horizon is exhausted.

    Terminal sites are recorded when first occupied but never launch a
    frog (a removed site ending a chain).
    """
    activated: Dict[SitePoint, ActivationRecord] = {
        source: ActivationRecord(source, 0, None)
    }
    if destination == source:
        return activated

    removed = mask.removed
    if destination is not None and destination in removed:
        terminals = terminals | {destination}

    streams: Dict[SitePoint, Iterator[Tuple[int, SitePoint]]] = {}
    heap: List[Tuple[int, SitePoint, SitePoint]] = []

    def launch(site: SitePoint, time: int) -> None:
        stream = _frog_events(field_, site, time, horizon, activated, removed, terminals)
        streams[site] = stream
        advance(site)

    def advance(site: SitePoint) -> None:
        event = next(streams[site], None)
        if event is None:
            del streams[site]
        else:
            heapq.heappush(heap, (event[0], site, event[1]))

    launch(source, 0)
    while heap:
        time, parent, site = heapq.heappop(heap)
        advance(parent)
        if site in activated:
            continue
        activated[site] = ActivationRecord(site, time, parent)
        if site == destination:
            break
        if site in terminals:
            continue
        launch(site, time)
    return activated


def _check_horizon(source: SitePoint, destination: SitePoint, horizon: int) -> None:
    if horizon < l1_distance(source, destination):
        raise ValueError(
            f"Horizon {horizon} is below the distance from {source} to {destination}"
        )


def passage_time(
    field_: WalkField,
    source: SitePoint,
    destination: SitePoint,
    mask: FrogMask = EMPTY_MASK,
    horizon: Optional[int] = None,
) -> PassageSample:
    """
    Exact T(source, destination) restricted to {T <= horizon}.

    Args:
        field_: Realized walks
        source: Site of the initially active frog (must not be masked)
        destination: Target site (may be masked: removed sites can end a chain)
        mask: Removed frogs, excluded as intermediate chain vertices
        horizon: Time horizon; defaults to the initial adaptive horizon

    Returns:
        PassageSample; value is NotReached(horizon) if the destination is
        not activated by the horizon
    """
    source = tuple(source)
    destination = tuple(destination)
    if source in mask:
        raise ValueError(f"Source {source} hosts a removed frog")
    if horizon is None:
        horizon = initial_horizon(source, destination)
    _check_horizon(source, destination, horizon)

    activated = _run_front(field_, source, mask, horizon, destination=destination)
    record = activated.get(destination)
    frontier = max(l1_distance(site, source) for site in activated)

    if record is None:
        return PassageSample(
            source=source,
            destination=destination,
            value=NotReached(horizon),
            genealogy=(),
            hop_times=(),
            max_jump=0,
            frontier_radius=frontier,
            horizon=horizon,
            activations=activated,
        )

    genealogy = [destination]
    while activated[genealogy[-1]].parent is not None:
        genealogy.append(activated[genealogy[-1]].parent)
    genealogy.reverse()
    hop_times = tuple(
        activated[b].time - activated[a].time for a, b in zip(genealogy, genealogy[1:])
    )
    max_jump = max((l1_distance(a, b) for a, b in zip(genealogy, genealogy[1:])), default=0)
    return PassageSample(
        source=source,
        destination=destination,
        value=record.time,
        genealogy=tuple(genealogy),
        hop_times=hop_times,
        max_jump=max_jump,
        frontier_radius=frontier,
        horizon=horizon,
        activations=activated,
    )


def activation_table(
    field_: WalkField,
    source: SitePoint,
    horizon: int,
    mask: FrogMask = EMPTY_MASK,
    terminals: Iterable[SitePoint] = (),
) -> Dict[SitePoint, int]:
    """
    Activation time of every site activated by the horizon: T(source, y)
    for all y with T(source, y) <= horizon. Terminal sites are reported when
    reached but do not activate.
    """
    source = tuple(source)
    if source in mask:
        raise ValueError(f"Source {source} hosts a removed frog")
    if horizon < 0:
        raise ValueError(f"Horizon must be non-negative, got {horizon}")
    activated = _run_front(field_, source, mask, horizon, terminals=frozenset(terminals))
    return {site: record.time for site, record in activated.items()}


def initial_horizon(source: SitePoint, destination: SitePoint) -> int:
    """Starting horizon of the adaptive policy: 4 |x|_1 + 64."""
    return 4 * l1_distance(source, destination) + 64


def passage_time_adaptive(
    field_: WalkField,
    source: SitePoint,
    destination: SitePoint,
    mask: FrogMask = EMPTY_MASK,
    cap: int = DEFAULT_HORIZON_CAP,
) -> PassageSample:
    """
    passage_time with horizon doubling on NotReached.

    Raises:
        HorizonExhausted: If the destination is still unreached at the cap
    """
    if cap < l1_distance(source, destination):
        raise HorizonExhausted(
            f"T({source}, {destination}) needs horizon >= {l1_distance(source, destination)}, cap is {cap}",
            horizon=cap,
        )
    horizon = min(initial_horizon(source, destination), cap)
    while True:
        sample = passage_time(field_, source, destination, mask, horizon)
        if sample.reached:
            return sample
        if horizon >= cap:
            raise HorizonExhausted(
                f"T({source}, {destination}) unresolved at horizon cap {cap}", horizon=cap
            )
        logger.debug("Doubling horizon %d for %s -> %s", horizon, source, destination)
        horizon = min(2 * horizon, cap)


def removed_passage_time(
    field_: WalkField,
    source: SitePoint,
    destination: SitePoint,
    z: SitePoint,
    horizon: int,
) -> PassageValue:
    """
    T^[z](source, destination): passage time not using the frog at z.

    z is only excluded as an intermediate vertex; with z == source the
    chain start is untouched and the unmasked value is returned, with
    z == destination the value is the first occupation of the destination.
    """
    source = tuple(source)
    z = tuple(z)
    mask = EMPTY_MASK if z == source else FrogMask.of(z)
    return passage_time(field_, source, destination, mask, horizon).value


def t1(field_: WalkField, u: SitePoint, v: SitePoint, horizon: int) -> PassageValue:
    """
    T1(u, v) = max over unit neighbours z of u of T^[u](z, v), plus 1.
    """
    u = tuple(u)
    v = tuple(v)
    worst = 0
    for z in unit_neighbors(u):
        if l1_distance(z, v) > horizon:
            return NotReached(horizon)
        value = passage_time(field_, z, v, FrogMask.of(u), horizon).value
        if isinstance(value, NotReached):
            return NotReached(horizon)
        worst = max(worst, value)
    return worst + 1


def t1_adaptive(
    field_: WalkField, u: SitePoint, v: SitePoint, cap: int = DEFAULT_HORIZON_CAP
) -> int:
    """t1 under the doubling horizon policy; raises HorizonExhausted at the cap."""
    horizon = min(initial_horizon(u, v) + 2, cap)
    while True:
        value = t1(field_, u, v, horizon)
        if not isinstance(value, NotReached):
            return value
        if horizon >= cap:
            raise HorizonExhausted(f"T1({u}, {v}) unresolved at horizon cap {cap}", horizon=cap)
        horizon = min(2 * horizon, cap)


def t2(field_: WalkField, u: SitePoint, v: SitePoint, horizon: int) -> PassageValue:
    """
    T2(u, v) = sup over z of T^[z](u, v), by genealogy reduction: removing
    a frog off the optimal chain leaves T unchanged, so only the interior
    genealogy sites need to be tried.
    """
    base = passage_time(field_, u, v, EMPTY_MASK, horizon)
    if not base.reached:
        return base.value
    worst = base.value
    for z in base.genealogy[1:-1]:
        value = removed_passage_time(field_, u, v, z, horizon)
        if isinstance(value, NotReached):
            return value
        worst = max(worst, value)
    return worst


def resampled_passage_time(
    field_: WalkField, u: SitePoint, v: SitePoint, salt: int, horizon: int
) -> PassageValue:
    """T~_u(u, v): passage time on the field with u's walk resampled."""
    return passage_time(field_.resampled([u], salt), u, v, EMPTY_MASK, horizon).value


def fm_radius(x: SitePoint) -> int:
    """m = floor(|x|_1^(1/4))"""
    return isqrt(isqrt(l1_norm(x)))


def spatial_average(field_: WalkField, x: SitePoint, horizon: int) -> Union[SpatialAverageResult, NotReached]:
    """
    F_m = (1 / #B(m)) * sum over z in B(m) of T(z, z + x), on one field.

    Returns:
        SpatialAverageResult, or NotReached if any term is unresolved
    """
    x = tuple(x)
    if l1_norm(x) < 1:
        raise ValueError("spatial_average needs |x|_1 >= 1")
    m = fm_radius(x)
    terms = []
    for z in box_sites(origin(len(x)), m):
        value = passage_time(field_, z, add(z, x), EMPTY_MASK, horizon).value
        if isinstance(value, NotReached):
            return value
        terms.append(value)
    return SpatialAverageResult(
        value=Fraction(sum(terms), len(terms)),
        m=m,
        terms=len(terms),
        term_values=tuple(terms),
    )


def subadditivity_check(
    field_: WalkField, x: SitePoint, y: SitePoint, horizon: int
) -> SubadditivityWitness:
    """Evaluate T(0, x+y) <= T(0, x) + T(x, x+y) samplewise."""
    x = tuple(x)
    y = tuple(y)
    zero = origin(len(x))
    xy = add(x, y)
    return SubadditivityWitness(
        x=x,
        y=y,
        t_0x=passage_time(field_, zero, x, EMPTY_MASK, horizon).value,
        t_x_xy=passage_time(field_, x, xy, EMPTY_MASK, horizon).value,
        t_0_xy=passage_time(field_, zero, xy, EMPTY_MASK, horizon).value,
    )


@dataclass(frozen=True)
class HopStatistics:
    """
    Genealogy hop diagnostics: counts of hops with T = t = M, keyed by M,
    and the sum of squared hop passage times.
    """

    exact_hops: Dict[int, int]
    sum_sq: int


def hop_statistics(field_: WalkField, sample: PassageSample) -> HopStatistics:
    """
    For each genealogy hop (y, y'), T(y, y') <= t(y, y'); a hop is exact
    when the one-hop chain is itself optimal.
    """
    if not sample.reached:
        raise ValueError("hop_statistics needs a resolved sample")
    exact: Dict[int, int] = {}
    sum_sq = 0
    for (a, b), hop in zip(zip(sample.genealogy, sample.genealogy[1:]), sample.hop_times):
        value = passage_time(field_, a, b, EMPTY_MASK, hop).value
        sum_sq += value * value
        if value == hop:
            exact[hop] = exact.get(hop, 0) + 1
    return HopStatistics(exact_hops=exact, sum_sq=sum_sq)
