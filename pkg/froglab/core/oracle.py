"""
FrogLab
Passage Oracle v1.1
20260915

Independent checks for the frog engine.

dijkstra_oracle builds the complete directed graph over the unmasked sites
of a box, weights every edge by a pairwise hitting time, and runs a
shortest-path search. It shares nothing with the engine except the
WalkField, so agreement between the two is a real cross-check.

Version History:
- v1.0: dijkstra_oracle on networkx DiGraph
- v1.1: Exhaustive z-sweep for T2
"""

import logging
from typing import Union

import networkx as nx

from froglab.core.frogcore import (
    EMPTY_MASK,
    FrogMask,
    NotReached,
    removed_passage_time,
)
from froglab.core.walkfield import WalkField
from froglab.utils.lattice import SitePoint, box_sites, in_box

logger = logging.getLogger(__name__)


def passage_graph(
    field_: WalkField,
    source: SitePoint,
    destination: SitePoint,
    mask: FrogMask,
    box_radius: int,
    horizon: int,
) -> nx.DiGraph:
    """
    Directed graph of one-hop chains inside B(source, box_radius).

    Nodes are the unmasked box sites plus the destination. A masked
    destination gets no outgoing edges: it may end a chain but never
    relays one.
    """
    source = tuple(source)
    destination = tuple(destination)
    nodes = [s for s in box_sites(source, box_radius) if s not in mask]
    node_set = set(nodes)
    if in_box(destination, source, box_radius):
        node_set.add(destination)

    graph = nx.DiGraph()
    graph.add_nodes_from(node_set)
    for u in nodes:
        for v, t in field_.first_visits(u, horizon).items():
            if v != u and v in node_set:
                graph.add_edge(u, v, weight=t)
    return graph


def dijkstra_oracle(
    field_: WalkField,
    source: SitePoint,
    destination: SitePoint,
    mask: FrogMask = EMPTY_MASK,
    box_radius: int = 0,
    horizon: int = 0,
) -> Union[int, NotReached]:
    """
    Chain infimum of T(source, destination) restricted to a box and horizon.

    Args:
        field_: Realized walks
        source: Chain start (always active)
        destination: Chain end
        mask: Sites excluded as intermediate vertices
        box_radius: Half side of the vertex box around source
        horizon: Walks are followed up to this many steps per hop

    Returns:
        Shortest-path value, or NotReached(horizon) when no chain of
        cost <= horizon exists in the box
    """
    source = tuple(source)
    destination = tuple(destination)
    if source == destination:
        return 0
    if not in_box(destination, source, box_radius):
        return NotReached(horizon)

    effective = mask if source not in mask else FrogMask(mask.removed - {source})
    graph = passage_graph(field_, source, destination, effective, box_radius, horizon)
    try:
        value = nx.dijkstra_path_length(graph, source, destination, weight="weight")
    except nx.NetworkXNoPath:
        return NotReached(horizon)
    if value > horizon:
        return NotReached(horizon)
    return int(value)


def t2_sweep(
    field_: WalkField,
    u: SitePoint,
    v: SitePoint,
    radius: int,
    horizon: int,
) -> Union[int, NotReached]:
    """
    T2(u, v) as the plain maximum of T^[z](u, v) over every z in B(u, radius).

    Slow; used to cross-check the genealogy reduction on small instances.
    """
    worst = 0
    for z in box_sites(u, radius):
        value = removed_passage_time(field_, u, v, z, horizon)
        if isinstance(value, NotReached):
            return value
        worst = max(worst, value)
    logger.debug("t2 sweep %s -> %s over radius %d: %d", u, v, radius, worst)
    return worst
