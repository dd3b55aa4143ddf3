"""
Exhaustive enumeration of simple oriented cycles in small digraphs.
"""
from typing import List, Set, Tuple

from ..reasoning.analysis import SigmaGraph


MAX_NODES = 8

OrientedCycle = Tuple[Tuple[int, ...], int]


def enumerate_oriented_cycles(graph: SigmaGraph) -> List[OrientedCycle]:
    """
    Every simple oriented cycle with its net length.

    A cycle is listed as its node sequence starting at its smallest node;
    arcs may be walked either way but each arc is used at most once, so
    every cycle appears once per direction of travel.
    """
    nodes = graph.nodes
    if len(nodes) > MAX_NODES:
        raise ValueError(f"Enumeration is limited to {MAX_NODES} nodes, graph has {len(nodes)}")

    cycles: List[OrientedCycle] = []

    def extend(start: int, path: List[int], used: Set[Tuple[int, int]], net: int) -> None:
        y = path[-1]
        for z, delta in graph.neighbours(y):
            arc = (y, z) if delta == 1 else (z, y)
            if arc in used:
                continue
            if z == start:
                cycles.append((tuple(path), net + delta))
            elif z > start and z not in path:
                used.add(arc)
                path.append(z)
                extend(start, path, used, net + delta)
                path.pop()
                used.discard(arc)

    for start in nodes:
        extend(start, [start], set(), 0)
    return cycles


def has_nonzero_cycle(graph: SigmaGraph) -> bool:
    return any(net != 0 for _, net in enumerate_oriented_cycles(graph))
