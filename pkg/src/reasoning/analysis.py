"""
Component-level analysis of an unfolding.

F^sigma collapses every connected component of F into one node (named by
its smallest vertex) and keeps an arc u -> v whenever sigma maps some
member of u to some member of v. Walking an arc forwards climbs one
level, walking it backwards descends one; everything here is a search
over (node, offset) pairs in that digraph.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Deque, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx

from ..formal.errors import VertexError
from ..formal.graphs import FVertex, UnfoldingSpec, Vertex


logger = logging.getLogger(__name__)

Entry = Tuple[int, int]


@dataclass(frozen=True)
class SigmaGraph:
    """Quotient digraph F^sigma over component representatives."""
    node_of: Tuple[int, ...]
    arcs: FrozenSet[Tuple[int, int]]

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> "SigmaGraph":
        """Digraph on nodes 0..n-1 where every node is its own component."""
        arc_set = frozenset(arcs)
        for u, v in arc_set:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexError(f"Arc ({u}, {v}) outside node range [0, {n})")
        return cls(tuple(range(n)), arc_set)

    @cached_property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.node_of)))

    @cached_property
    def _adjacency(self) -> Dict[int, Tuple[Tuple[int, int], ...]]:
        steps: Dict[int, Set[Tuple[int, int]]] = {u: set() for u in self.nodes}
        for u, v in self.arcs:
            steps[u].add((v, 1))
            steps[v].add((u, -1))
        return {u: tuple(sorted(s)) for u, s in steps.items()}

    def successors(self, node: int) -> Tuple[int, ...]:
        return tuple(sorted(v for u, v in self.arcs if u == node))

    def neighbours(self, node: int) -> Tuple[Tuple[int, int], ...]:
        """
        (neighbour, delta) steps available from node.

        Neighbours come in ascending order; for each one the backward step
        (delta -1) precedes the forward step (delta +1).
        """
        return self._adjacency[node]

    def image(self, nodes: Iterable[int]) -> FrozenSet[int]:
        """Nodes reached from `nodes` by one forward arc."""
        sources = set(nodes)
        return frozenset(v for u, v in self.arcs if u in sources)


def build_sigma_graph(spec: UnfoldingSpec) -> SigmaGraph:
    """Quotient F by its E_F components and lift sigma to arcs between them."""
    block = nx.Graph()
    block.add_nodes_from(range(spec.F.n))
    block.add_edges_from(spec.F.edges)
    node_of = [0] * spec.F.n
    for component in nx.connected_components(block):
        representative = min(component)
        for x in component:
            node_of[x] = representative
    arcs = frozenset((node_of[x], node_of[y]) for x, image in enumerate(spec.sigma) for y in image)
    graph = SigmaGraph(tuple(node_of), arcs)
    logger.debug("F^sigma: %d nodes, %d arcs", len(graph.nodes), len(arcs))
    return graph


@dataclass(frozen=True)
class CycleWitness:
    """Two labels for the same node: an oriented cycle of net length second - first exists."""
    base: int
    node: int
    first: int
    second: int

    @property
    def net_length(self) -> int:
        return self.second - self.first


def find_nonzero_cycle(graph: SigmaGraph) -> Optional[CycleWitness]:
    """
    Look for an oriented cycle whose net length is non-zero.

    From each node not yet labelled, propagate offsets breadth-first
    (+1 along an arc, -1 against it). A node receiving two different
    offsets closes a cycle with non-zero net length.
    """
    labelled: Set[int] = set()
    for base in graph.nodes:
        if base in labelled:
            continue
        labels = {base: 0}
        queue: Deque[int] = deque([base])
        while queue:
            y = queue.popleft()
            for z, delta in graph.neighbours(y):
                offset = labels[y] + delta
                if z not in labels:
                    labels[z] = offset
                    queue.append(z)
                elif labels[z] != offset:
                    witness = CycleWitness(base, z, labels[z], offset)
                    logger.debug("Offset conflict at node %d: %d vs %d", z, labels[z], offset)
                    return witness
        labelled.update(labels)
    return None


def oriented_cycle_nonzero(graph: SigmaGraph) -> bool:
    return find_nonzero_cycle(graph) is not None


def has_infinite_component(spec: UnfoldingSpec) -> bool:
    """Whether the unfolding has an infinite component. The prefix D never matters."""
    return oriented_cycle_nonzero(build_sigma_graph(spec))


@dataclass
class OffsetQueue:
    """
    FIFO of (node, offset) pairs reached by a windowed search.

    pred maps every non-root entry to (parent entry, delta of the step).
    """
    root: Entry
    level: int
    lower: int
    upper: int
    entries: List[Entry] = field(default_factory=list)
    pred: Dict[Entry, Tuple[Entry, int]] = field(default_factory=dict)
    processed: int = 0
    _index: Set[Entry] = field(default_factory=set, repr=False)

    def push(self, entry: Entry, parent: Optional[Entry] = None, delta: int = 0) -> bool:
        if entry in self._index:
            return False
        self._index.add(entry)
        self.entries.append(entry)
        if parent is not None:
            self.pred[entry] = (parent, delta)
        return True

    def __contains__(self, entry: object) -> bool:
        return entry in self._index

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def nodes_at(self, offset: int) -> FrozenSet[int]:
        return frozenset(node for node, d in self.entries if d == offset)

    def first_at(self, offset: int) -> Optional[Entry]:
        for entry in self.entries:
            if entry[1] == offset:
                return entry
        return None

    def path_to(self, entry: Entry) -> List[Entry]:
        """Entries from the root to `entry` following predecessor links."""
        if entry not in self._index:
            raise KeyError(entry)
        path = [entry]
        while path[-1] in self.pred:
            path.append(self.pred[path[-1]][0])
        return list(reversed(path))


def finite_reach(spec: UnfoldingSpec,
                 x: int,
                 level: int,
                 lower: int,
                 upper: int,
                 graph: Optional[SigmaGraph] = None) -> OffsetQueue:
    """
    Every (node, offset) reachable from x^level at offset 0 without leaving
    the offset window [lower, upper].

    Args:
        spec: the unfolding
        x: F-vertex the search starts from
        level: level of the start vertex
        lower: smallest offset allowed (<= 0)
        upper: largest offset allowed (>= 0)
        graph: F^sigma of spec, built if omitted

    Returns:
        OffsetQueue in processing order with predecessor links
    """
    if not 0 <= x < spec.F.n:
        raise VertexError(f"F-vertex {x} outside [0, {spec.F.n})")
    if level < 0:
        raise VertexError(f"Level must be non-negative, got {level}")
    if not lower <= 0 <= upper:
        raise ValueError(f"Window [{lower}, {upper}] must contain offset 0")
    graph = graph or build_sigma_graph(spec)

    root = (graph.node_of[x], 0)
    queue = OffsetQueue(root=root, level=level, lower=lower, upper=upper)
    queue.push(root)
    while queue.processed < len(queue.entries):
        y, d = queue.entries[queue.processed]
        queue.processed += 1
        for z, delta in graph.neighbours(y):
            offset = d + delta
            if lower <= offset <= upper:
                queue.push((z, offset), (y, d), delta)
    return queue


@dataclass(frozen=True)
class InfinityVerdict:
    """Outcome of the windowed infinity test for one F-copy, ignoring D."""
    vertex: FVertex
    window: Tuple[int, int]
    boundary: FrozenSet[int]
    by_boundary: bool
    by_outgoing_arc: bool

    @property
    def infinite(self) -> bool:
        return self.by_boundary

    @property
    def agrees(self) -> bool:
        return self.by_boundary == self.by_outgoing_arc


def infinity_test_details(spec: UnfoldingSpec,
                          x: int,
                          level: int,
                          graph: Optional[SigmaGraph] = None) -> InfinityVerdict:
    """
    Decide whether x^level lies in an infinite component of the sigma-only graph.

    The search runs in the window [-min(p, level), p]; the component is
    infinite iff some node is reached at offset p. The stricter variant
    that also demands an outgoing arc from such a node is recorded too.
    """
    graph = graph or build_sigma_graph(spec)
    p = spec.p
    window = (-min(p, level), p)
    queue = finite_reach(spec, x, level, window[0], window[1], graph)
    boundary = queue.nodes_at(p)
    outgoing = any(graph.successors(y) for y in boundary)
    verdict = InfinityVerdict(FVertex(x, level), window, boundary, bool(boundary), outgoing)
    if not verdict.agrees:
        logger.warning("Infinity test variants disagree at %s: boundary=%s outgoing-arc=%s",
                       spec.vertex_name(verdict.vertex), verdict.by_boundary, verdict.by_outgoing_arc)
    return verdict


def is_in_infinite_component(spec: UnfoldingSpec, v: Vertex) -> bool:
    """Whether v belongs to an infinite component of the unfolding."""
    spec.check_vertex(v)
    if isinstance(v, FVertex) and spec.D.n == 0:
        return infinity_test_details(spec, v.x, v.level).infinite
    from .reachability import ReachabilityIndex
    return ReachabilityIndex(spec).is_infinite(v)
