"""
FrogLab
Site Fields v1.2
20260917

Site-percolation indicator fields on B(L) = [-L, L]^d.

Generators:
    gen_independent_field    i.i.d. Bernoulli(p), dependence range 0
    gen_m_dependent_field    moving-window maximum of an i.i.d. field
    gen_frog_indicator_field I_y: some z has T(y, z) = t(y, z) = M
    gen_t1_indicator_field   I_y: some z within level has T1(y, z) = level

Fields round-trip through a flat text format: a header line `d L M seed`
followed by one `x1 ... xd bit` line per site in lexicographic order.

Version History:
- v1.0: SiteField, independent generator, text codec
- v1.1: M-dependent window generator, frog indicator field
- v1.2: T1 indicator field
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Union

import numpy as np

from froglab.core.frogcore import NotReached, activation_table, t1
from froglab.core.walkfield import WalkField
from froglab.utils.lattice import SitePoint, box_sites, in_box, l1_ball_sites, origin

logger = logging.getLogger(__name__)

# spawn_key tags keep field streams apart from each other
_INDEPENDENT_TAG = 101
_WINDOW_TAG = 102


@dataclass(frozen=True)
class SiteField:
    """
    0/1 indicators on every site of B(L).

    M is the declared dependence range: indicators at sites farther than
    M apart (l1) are independent by construction. M = 0 means i.i.d.
    """

    d: int
    L: int
    M: int
    seed: int
    indicators: Dict[SitePoint, int]
    density: Optional[float] = field(default=None, compare=False)
    kind: str = field(default="file", compare=False)

    def __getitem__(self, site: SitePoint) -> int:
        try:
            return self.indicators[site]
        except KeyError:
            raise KeyError(f"Site {site} outside field box B({self.L})") from None

    def __len__(self) -> int:
        return len(self.indicators)

    def __repr__(self) -> str:
        return f"<SiteField(kind={self.kind}, d={self.d}, L={self.L}, M={self.M}, seed={self.seed})>"

    def covers(self, radius: int) -> bool:
        return radius <= self.L

    def open_sites(self, radius: Optional[int] = None) -> List[SitePoint]:
        """Open sites of B(radius) (whole field by default), lexicographic order."""
        radius = self.L if radius is None else radius
        center = origin(self.d)
        return sorted(
            s for s, bit in self.indicators.items() if bit and in_box(s, center, radius)
        )

    def mean(self) -> float:
        return sum(self.indicators.values()) / len(self.indicators)

    def restrict(self, radius: int) -> "SiteField":
        if radius > self.L:
            raise ValueError(f"Cannot restrict B({self.L}) field to radius {radius}")
        center = origin(self.d)
        kept = {s: b for s, b in self.indicators.items() if in_box(s, center, radius)}
        return SiteField(self.d, radius, self.M, self.seed, kept, self.density, self.kind)


def _field_rng(seed: int, tag: int, d: int, L: int, extra: int = 0) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(tag, d, L, extra))
    return np.random.Generator(np.random.Philox(seq))


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Probability must lie in [0, 1], got {p}")


def gen_independent_field(seed: int, L: int, p: float, d: int = 2) -> SiteField:
    """
    i.i.d. Bernoulli(p) indicators on B(L).

    Args:
        seed: Field seed (keyed Philox stream)
        L: Box radius
        p: Open probability
        d: Dimension

    Returns:
        SiteField with M = 0
    """
    _check_probability(p)
    if L < 0:
        raise ValueError(f"Box radius must be non-negative, got {L}")
    sites = box_sites(origin(d), L)
    draws = _field_rng(seed, _INDEPENDENT_TAG, d, L).random(len(sites))
    bits = (draws < p).astype(int).tolist()
    return SiteField(d, L, 0, seed, dict(zip(sites, bits)), density=p, kind="independent")


def window_radius(M: int) -> int:
    """l1 window radius whose maxima are M-dependent: floor(M / 2)."""
    return M // 2


def gen_m_dependent_field(seed: int, L: int, M: int, p: float, d: int = 2) -> SiteField:
    """
    Moving-window maximum of an i.i.d. Bernoulli(p) field.

    I_x = max of the base field over the l1 ball of radius floor(M/2)
    around x. Two windows whose centers are more than M apart are
    disjoint, so the result is M-dependent.
    """
    _check_probability(p)
    if M < 1:
        raise ValueError(f"Dependence range must be >= 1, got {M}")
    r = window_radius(M)
    base_sites = box_sites(origin(d), L + r)
    draws = _field_rng(seed, _WINDOW_TAG, d, L, M).random(len(base_sites))
    base = dict(zip(base_sites, (draws < p).tolist()))
    indicators = {
        x: int(any(base[y] for y in l1_ball_sites(x, r)))
        for x in box_sites(origin(d), L)
    }
    density = 1.0 - (1.0 - p) ** len(l1_ball_sites(origin(d), r))
    return SiteField(d, L, M, seed, indicators, density=density, kind="window")


def frog_indicator(field_: WalkField, y: SitePoint, M: int) -> int:
    """
    1 iff some z with |z - y|_1 <= M has T(y, z) = t(y, z) = M.

    Only walks within B(y, M) are consulted.
    """
    times = activation_table(field_, y, M)
    visits = field_.first_visits(y, M)
    return int(any(t == M and times.get(z) == M for z, t in visits.items()))


def gen_frog_indicator_field(field_: WalkField, L: int, M: int) -> SiteField:
    """Frog-derived indicator field on B(L), dependence range M."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    indicators = {y: frog_indicator(field_, y, M) for y in box_sites(origin(field_.d), L)}
    opened = sum(indicators.values())
    logger.debug("frog indicator field L=%d M=%d: %d open", L, M, opened)
    return SiteField(
        field_.d, L, M, field_.master_seed, indicators, density=opened / len(indicators), kind="frog"
    )


def t1_indicator(field_: WalkField, y: SitePoint, level: int) -> int:
    """1 iff some z with |z - y|_1 <= level has T1(y, z) = level."""
    for z in l1_ball_sites(y, level):
        value = t1(field_, y, z, level - 1)
        if not isinstance(value, NotReached) and value == level:
            return 1
    return 0


def gen_t1_indicator_field(field_: WalkField, L: int, level: int) -> SiteField:
    """T1-derived indicator field on B(L); T1(y, .) only uses walks near y."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    indicators = {
        y: t1_indicator(field_, y, level) if level > 1 else 0
        for y in box_sites(origin(field_.d), L)
    }
    density = sum(indicators.values()) / len(indicators)
    return SiteField(field_.d, L, level, field_.master_seed, indicators, density=density, kind="t1")


def format_field(site_field: SiteField) -> Iterator[str]:
    yield f"{site_field.d} {site_field.L} {site_field.M} {site_field.seed}"
    for site in sorted(site_field.indicators):
        yield " ".join(str(c) for c in site) + f" {site_field.indicators[site]}"


def write_field(site_field: SiteField, path: Union[str, Path]) -> None:
    """Write a field in the flat text format."""
    Path(path).write_text("\n".join(format_field(site_field)) + "\n", encoding="utf-8")


def parse_field(text: str) -> SiteField:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("Empty field file")
    header = lines[0].split()
    if len(header) != 4:
        raise ValueError(f"Bad field header: {lines[0]!r}")
    d, L, M, seed = (int(v) for v in header)
    indicators: Dict[SitePoint, int] = {}
    for number, line in enumerate(lines[1:], start=2):
        parts = [int(v) for v in line.split()]
        if len(parts) != d + 1 or parts[-1] not in (0, 1):
            raise ValueError(f"Bad field line {number}: {line!r}")
        indicators[tuple(parts[:-1])] = parts[-1]
    expected = (2 * L + 1) ** d
    if len(indicators) != expected:
        raise ValueError(f"Field lists {len(indicators)} sites, B({L}) has {expected}")
    density = sum(indicators.values()) / expected
    return SiteField(d, L, M, seed, indicators, density=density, kind="file")


def read_field(path: Union[str, Path]) -> SiteField:
    """Read a field written by write_field."""
    return parse_field(Path(path).read_text(encoding="utf-8"))
