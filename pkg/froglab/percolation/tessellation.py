"""
FrogLab
Tessellation v1.1
20260920

Box tessellation reducing an M-dependent field to 2^d independent
families of group indicators.

For w_i in {0,1}^d and z in Z^d the box B_{i,z} = 3M(w_i + 2z) + [0, 3M]^d.
Every site lies in some box, and two boxes of one group are at l1
distance at least 3M. On the integer lattice the gap between neighbouring
boxes of one group is exactly 3M, which still exceeds M.

Version History:
- v1.0: tessellate, group indicators, chain bound check
- v1.1: Empirical within-group independence report
"""

import logging
from dataclasses import dataclass
from itertools import product
from math import ceil, sqrt
from typing import Dict, List, Sequence, Tuple

from froglab.percolation.fields import SiteField
from froglab.percolation.paths import max_path_weight
from froglab.utils.lattice import SitePoint, add, box_sites, origin, unit_vector

logger = logging.getLogger(__name__)

GroupShift = Tuple[int, ...]


@dataclass(frozen=True)
class TessBox:
    group: int
    z: SitePoint
    lower: SitePoint
    side: int

    @property
    def upper(self) -> SitePoint:
        return tuple(c + self.side for c in self.lower)

    def __contains__(self, site: object) -> bool:
        return all(lo <= c <= lo + self.side for c, lo in zip(site, self.lower))

    def sites(self) -> List[SitePoint]:
        return [tuple(p) for p in product(*(range(lo, lo + self.side + 1) for lo in self.lower))]


def box_distance(a: TessBox, b: TessBox) -> int:
    """l1 distance between two axis-parallel boxes."""
    total = 0
    for lo_a, hi_a, lo_b, hi_b in zip(a.lower, a.upper, b.lower, b.upper):
        total += max(0, lo_b - hi_a, lo_a - hi_b)
    return total


@dataclass(frozen=True)
class Tessellation:
    M: int
    d: int
    shifts: Tuple[GroupShift, ...]
    groups: Dict[int, Tuple[TessBox, ...]]

    @property
    def side(self) -> int:
        return 3 * self.M

    def boxes(self) -> List[TessBox]:
        return [box for group in sorted(self.groups) for box in self.groups[group]]

    def containing(self, site: SitePoint) -> List[TessBox]:
        return [box for box in self.boxes() if site in box]


def make_box(M: int, group: int, shift: GroupShift, z: SitePoint) -> TessBox:
    lower = tuple(3 * M * (w + 2 * c) for w, c in zip(shift, z))
    return TessBox(group, tuple(z), lower, 3 * M)


def z_range(M: int, w: int, radius: int) -> range:
    """z values whose box coordinate interval meets [-radius, radius]."""
    low = ceil((-radius - 3 * M * (w + 1)) / (6 * M))
    high = (radius - 3 * M * w) // (6 * M)
    return range(low, high + 1)


def tessellate(M: int, radius: int, d: int = 2) -> Tessellation:
    """
    All boxes meeting B(radius), grouped by shift index 1..2^d.

    Args:
        M: Dependence range (>= 1)
        radius: Region B(radius) to cover
        d: Dimension
    """
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    shifts = tuple(product((0, 1), repeat=d))
    groups: Dict[int, Tuple[TessBox, ...]] = {}
    for index, shift in enumerate(shifts, start=1):
        ranges = [z_range(M, w, radius) for w in shift]
        groups[index] = tuple(make_box(M, index, shift, z) for z in product(*ranges))
    return Tessellation(M, d, shifts, groups)


def group_indicators(site_field: SiteField, M: int, group: int, z_radius: int) -> SiteField:
    """
    Y^i_z = 1 iff the box B_{i,z} holds an open site, for z in B(z_radius).

    The field must cover every such box.
    """
    d = site_field.d
    shift = tuple(product((0, 1), repeat=d))[group - 1]
    need = group_field_radius(M, z_radius)
    if not site_field.covers(need):
        raise ValueError(f"Field radius {site_field.L} below {need} needed for group indicators")
    values = {}
    for z in box_sites(origin(d), z_radius):
        box = make_box(M, group, shift, z)
        values[z] = int(any(site_field[s] for s in box.sites()))
    return SiteField(d, z_radius, 0, site_field.seed, values, kind=f"group{group}")


def group_field_radius(M: int, z_radius: int) -> int:
    """Field radius covering every box B_{i,z} with z in B(z_radius)."""
    return 3 * M * (2 * z_radius + 2)


def projected_budget(L: int, M: int) -> int:
    return ceil(L / (3 * M))


@dataclass(frozen=True)
class TessellationReport:
    """
    X_L against (3M+1)^d * sum_i X^i_{L,M}, plus the per-group density
    relation p_M <= (3M+1)^d q_M over the boxes actually used.
    """

    d: int
    L: int
    M: int
    x_l: int
    group_maxima: Tuple[int, ...]
    bound: int
    p_hat: Tuple[float, ...]
    q_hat: Tuple[float, ...]

    @property
    def holds(self) -> bool:
        return self.x_l <= self.bound

    @property
    def density_holds(self) -> bool:
        factor = (3 * self.M + 1) ** self.d
        return all(p <= factor * q + 1e-12 for p, q in zip(self.p_hat, self.q_hat))


def tessellation_bound_check(site_field: SiteField, L: int, M: int) -> TessellationReport:
    """
    Evaluate X_L <= (3M+1)^d sum_i X^i_{L,M} on one field.

    X^i_{L,M} is the exact max over P_{ceil(L/3M)} of the group-i
    indicators; the field must cover B(3M(2 ceil(L/3M) + 2)).
    """
    d = site_field.d
    budget = projected_budget(L, M)
    x_l = max_path_weight(site_field, L).weight
    maxima = []
    p_hat = []
    q_hat = []
    for group in range(1, 2 ** d + 1):
        indicators = group_indicators(site_field, M, group, budget)
        maxima.append(max_path_weight(indicators, budget).weight)
        shift = tuple(product((0, 1), repeat=d))[group - 1]
        covered = [
            site_field[s]
            for z in indicators.indicators
            for s in make_box(M, group, shift, z).sites()
        ]
        p_hat.append(indicators.mean())
        q_hat.append(sum(covered) / len(covered))
    bound = (3 * M + 1) ** d * sum(maxima)
    report = TessellationReport(d, L, M, x_l, tuple(maxima), bound, tuple(p_hat), tuple(q_hat))
    logger.debug("tessellation L=%d M=%d: %d <= %d", L, M, x_l, bound)
    return report


@dataclass(frozen=True)
class IndependenceReport:
    """
    Lag-one co-occurrence of group indicators against the product of
    marginals, over adjacent z pairs pooled across fields.
    """

    pairs: int
    marginal: float
    joint: float
    z_score: float

    @property
    def within_three_sigma(self) -> bool:
        return abs(self.z_score) <= 3.0


def group_independence_report(
    fields: Sequence[SiteField], M: int, group: int, z_radius: int
) -> IndependenceReport:
    """Pool Y^i_z over fields and compare P(Y_z = Y_z' = 1) with P(Y = 1)^2."""
    if not fields:
        raise ValueError("group_independence_report needs at least one field")
    d = fields[0].d
    ones = 0
    total = 0
    joint = 0
    pairs = 0
    for site_field in fields:
        values = group_indicators(site_field, M, group, z_radius).indicators
        ones += sum(values.values())
        total += len(values)
        for z, y in values.items():
            for axis in range(d):
                neighbour = add(z, unit_vector(d, axis))
                if neighbour in values:
                    pairs += 1
                    joint += y * values[neighbour]
    marginal = ones / total
    expected = marginal * marginal
    joint_rate = joint / pairs if pairs else 0.0
    spread = sqrt(expected * (1.0 - expected) / pairs) if pairs and 0.0 < expected < 1.0 else 0.0
    z_score = (joint_rate - expected) / spread if spread else 0.0
    return IndependenceReport(pairs, marginal, joint_rate, z_score)
