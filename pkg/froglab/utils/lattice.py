"""
FrogLab
Lattice Helpers v1.1
20260911

Integer lattice geometry on Z^d: l1 norms, boxes B(n) = [-n, n]^d,
unit neighbours and the parity relation of the bipartite lattice.

Sites are plain tuples of ints so they hash fast and sort lexicographically.

Version History:
- v1.0: Initial helpers (norms, boxes, neighbours)
- v1.1: Added direction parsing and zigzag encoding for RNG keys
"""

from itertools import product
from typing import List, Sequence, Tuple

SitePoint = Tuple[int, ...]

MAX_DIMENSION = 4


def origin(d: int) -> SitePoint:
    """Return the origin of Z^d."""
    return (0,) * d


def l1_norm(x: Sequence[int]) -> int:
    """|x|_1 = |x_1| + ... + |x_d|"""
    return sum(abs(c) for c in x)


def l1_distance(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(abs(a - b) for a, b in zip(x, y))


def add(x: Sequence[int], y: Sequence[int]) -> SitePoint:
    return tuple(a + b for a, b in zip(x, y))


def scale(x: Sequence[int], k: int) -> SitePoint:
    return tuple(k * c for c in x)


def unit_vector(d: int, axis: int, sign: int = 1) -> SitePoint:
    return tuple(sign if i == axis else 0 for i in range(d))


def unit_neighbors(x: Sequence[int]) -> List[SitePoint]:
    """
    The 2d nearest neighbours of x, in direction-index order
    (+e1, -e1, +e2, -e2, ...).
    """
    neighbors = []
    for axis in range(len(x)):
        for sign in (1, -1):
            y = list(x)
            y[axis] += sign
            neighbors.append(tuple(y))
    return neighbors


def box_sites(center: Sequence[int], radius: int) -> List[SitePoint]:
    """
    Sites of center + [-radius, radius]^d in lexicographic order.

    Args:
        center: Box center
        radius: Half side length (>= 0)

    Returns:
        List of sites, sorted
    """
    if radius < 0:
        return []
    ranges = [range(c - radius, c + radius + 1) for c in center]
    return [tuple(p) for p in product(*ranges)]


def in_box(x: Sequence[int], center: Sequence[int], radius: int) -> bool:
    return all(abs(a - c) <= radius for a, c in zip(x, center))


def l1_ball_sites(center: Sequence[int], radius: int) -> List[SitePoint]:
    """Sites within l1 distance radius of center, lexicographic order."""
    return [y for y in box_sites(center, radius) if l1_distance(y, center) <= radius]


def box_size(d: int, radius: int) -> int:
    """#B(radius) = (2 radius + 1)^d"""
    return (2 * radius + 1) ** d


def parity_ok(value: int, x: Sequence[int], y: Sequence[int]) -> bool:
    """
    Distance and parity relation every lattice walk time satisfies:
    value >= |x - y|_1 and value = |x - y|_1 (mod 2).
    """
    dist = l1_distance(x, y)
    return value >= dist and (value - dist) % 2 == 0


def geodesic(x: Sequence[int], y: Sequence[int]) -> List[SitePoint]:
    """
    One shortest nearest-neighbour lattice path from x to y, both
    endpoints included (axis 1 first, then axis 2, ...).
    """
    path = [tuple(x)]
    current = list(x)
    for axis in range(len(x)):
        step = 1 if y[axis] > current[axis] else -1
        while current[axis] != y[axis]:
            current[axis] += step
            path.append(tuple(current))
    return path


def parse_site(text: str) -> SitePoint:
    """Parse '3,0' or '3 0' into a site."""
    parts = text.replace(",", " ").split()
    if not parts:
        raise ValueError(f"Empty site specification: {text!r}")
    return tuple(int(p) for p in parts)


def direction_vector(direction: str, d: int) -> SitePoint:
    """
    Resolve a direction name into a lattice vector.

    Accepts 'e1'..'e<d>' or an explicit coordinate list such as '1,1'.
    """
    direction = direction.strip().lower()
    if direction.startswith("e") and direction[1:].isdigit():
        axis = int(direction[1:]) - 1
        if not 0 <= axis < d:
            raise ValueError(f"Direction {direction!r} not available in d={d}")
        return unit_vector(d, axis)
    vector = parse_site(direction)
    if len(vector) != d:
        raise ValueError(f"Direction {direction!r} has wrong dimension for d={d}")
    if l1_norm(vector) == 0:
        raise ValueError("Direction must be non-zero")
    return vector


def zigzag(c: int) -> int:
    """Map Z bijectively onto N (0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...)."""
    return 2 * c if c >= 0 else -2 * c - 1
