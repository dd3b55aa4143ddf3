"""
Pairwise reachability in the unfolding.

Finite components are settled by one windowed search. Infinite
components are periodic: from a base node x at level p, the nodes whose
copies share x^p's component k levels higher form the k-th closure of x, and
the closures repeat with a period r <= p. The prefix D is handled by
gluing level-0 sigma-components together through the D-components they
are attached to.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from ..formal.errors import DomainError
from ..formal.graphs import DVertex, FVertex, UnfoldingSpec, Vertex
from .analysis import OffsetQueue, SigmaGraph, build_sigma_graph, finite_reach


logger = logging.getLogger(__name__)


def reach_set(spec: UnfoldingSpec, node: int, graph: Optional[SigmaGraph] = None) -> FrozenSet[int]:
    """Nodes y whose copy y^p shares x^p's component inside levels 0..2p."""
    p = spec.p
    return finite_reach(spec, node, p, -p, p, graph).nodes_at(0)


def compute_period(spec: UnfoldingSpec, node: int, graph: Optional[SigmaGraph] = None) -> int:
    """
    Period r of the closures of an infinite base node.

    Follows the predecessor path from the root to the first entry found at
    offset p; the first node met twice on it, at offsets j and k, gives
    r = |k - j|.
    """
    p = spec.p
    queue = finite_reach(spec, node, p, -p, p, graph)
    target = queue.first_at(p)
    if target is None:
        raise DomainError(f"Node {node} is not in an infinite component, it has no period")
    seen: Dict[int, int] = {}
    for z, offset in queue.path_to(target):
        if z in seen:
            period = abs(offset - seen[z])
            logger.debug("Period of node %d is %d (node %d repeats)", node, period, z)
            return period
        seen[z] = offset
    raise DomainError(f"No repeated node on the path from node {node} to offset {p}")


@dataclass(frozen=True)
class ClosureTable:
    """The r closures of an infinite base node, one per residue of the level gap."""
    base: int
    period: int
    closures: Tuple[FrozenSet[int], ...]

    def closure(self, k: int) -> FrozenSet[int]:
        return self.closures[k % self.period]

    def summary(self, names: Optional[Tuple[str, ...]] = None) -> Dict[str, object]:
        label = (lambda u: names[u]) if names else str
        return {
            "base": label(self.base),
            "period": self.period,
            "closures": [sorted(label(u) for u in c) for c in self.closures],
        }


def closure_table(spec: UnfoldingSpec,
                  node: int,
                  graph: Optional[SigmaGraph] = None,
                  reach: Optional[Dict[int, FrozenSet[int]]] = None) -> ClosureTable:
    """Closure table of an infinite base node; `reach` caches Reach sets across calls."""
    graph = graph or build_sigma_graph(spec)
    cache = reach if reach is not None else {}
    base = graph.node_of[node]

    def reach_of(u: int) -> FrozenSet[int]:
        if u not in cache:
            cache[u] = reach_set(spec, u, graph)
        return cache[u]

    period = compute_period(spec, base, graph)
    closures: List[FrozenSet[int]] = [reach_of(base)]
    for _ in range(1, period):
        closures.append(frozenset().union(*(reach_of(u) for u in graph.image(closures[-1]))))
    return ClosureTable(base, period, tuple(closures))


class PrefixGlue:
    """
    Union-find over level-0 sigma-components and D-components.

    A D-component is merged with every node it attaches to through eta,
    and two attached nodes are merged when their level-0 copies are
    connected without using D.
    """

    def __init__(self, index: "ReachabilityIndex"):
        spec, graph = index.spec, index.graph
        prefix = nx.Graph()
        prefix.add_nodes_from(range(spec.D.n))
        prefix.add_edges_from(spec.D.edges)
        self.component_of: Dict[int, int] = {}
        self.attachments: Dict[int, FrozenSet[int]] = {}
        for component in nx.connected_components(prefix):
            representative = min(component)
            for d in component:
                self.component_of[d] = representative
            self.attachments[representative] = frozenset(
                graph.node_of[x] for d in component for x in spec.eta[d])

        self.attached: Tuple[int, ...] = tuple(sorted(set().union(*self.attachments.values())))
        self._sets = UnionFind()
        for component, nodes in self.attachments.items():
            self._sets[("d", component)]
            for u in nodes:
                self._sets.union(("d", component), ("f", u))
        for k, u in enumerate(self.attached):
            for w in self.attached[k + 1:]:
                if index.sigma_reachable(FVertex(u, 0), FVertex(w, 0)):
                    self._sets.union(("f", u), ("f", w))
        self.infinite_classes: FrozenSet[Hashable] = frozenset(
            self._sets[("f", u)] for u in self.attached if index.sigma_infinite(u, 0))
        logger.debug("Prefix glue: %d D-components, %d attached nodes, %d infinite classes",
                     len(self.attachments), len(self.attached), len(self.infinite_classes))

    def class_of_node(self, node: int) -> Hashable:
        return self._sets[("f", node)]

    def class_of_d(self, d: int) -> Optional[Hashable]:
        component = self.component_of[d]
        if not self.attachments[component]:
            return None
        return self._sets[("d", component)]


class ReachabilityIndex:
    """
    Cached reachability answers for one spec.

    Infinity verdicts are kept per (node, min(level, p)) and closure tables
    per infinite base node; after precompute() every query is a handful of
    lookups.
    """

    def __init__(self, spec: UnfoldingSpec, graph: Optional[SigmaGraph] = None):
        self.spec = spec
        self.graph = graph or build_sigma_graph(spec)
        self.p = spec.p
        self._queues: Dict[Tuple[int, int], OffsetQueue] = {}
        self._tables: Dict[int, ClosureTable] = {}
        self._reach: Dict[int, FrozenSet[int]] = {}
        self._classes: Dict[Vertex, FrozenSet[Hashable]] = {}

    def finite_queue(self, x: int, level: int) -> OffsetQueue:
        """Search from x^level in the window [-min(p, level), p]; identical for all levels >= p."""
        key = (self.graph.node_of[x], min(level, self.p))
        if key not in self._queues:
            node, lvl = key
            self._queues[key] = finite_reach(self.spec, node, lvl, -lvl, self.p, self.graph)
        return self._queues[key]

    def sigma_infinite(self, x: int, level: int) -> bool:
        """Whether x^level is in an infinite component of the graph without D."""
        return bool(self.finite_queue(x, level).nodes_at(self.p))

    def closure_table(self, x: int) -> ClosureTable:
        base = self.graph.node_of[x]
        if base not in self._tables:
            if not self.sigma_infinite(base, self.p):
                raise DomainError(f"Closure table needs an infinite base, node {base} is finite")
            self._tables[base] = closure_table(self.spec, base, self.graph, self._reach)
        return self._tables[base]

    def sigma_reachable(self, u: FVertex, v: FVertex) -> bool:
        """Connectivity of two F-copies in the graph without D."""
        if u.level > v.level:
            u, v = v, u
        infinite_u = self.sigma_infinite(u.x, u.level)
        if infinite_u != self.sigma_infinite(v.x, v.level):
            return False
        target = self.graph.node_of[v.x]
        gap = v.level - u.level
        if infinite_u:
            return target in self.closure_table(u.x).closure(gap)
        if gap > self.p:
            return False
        return (target, gap) in self.finite_queue(u.x, u.level)

    @cached_property
    def glue(self) -> PrefixGlue:
        return PrefixGlue(self)

    def classes(self, v: Vertex) -> FrozenSet[Hashable]:
        """Glue classes v belongs to (through its D-component or through attached level-0 nodes)."""
        if v not in self._classes:
            glue = self.glue
            if isinstance(v, DVertex):
                found = glue.class_of_d(v.d)
                result = frozenset([found]) if found is not None else frozenset()
            else:
                result = frozenset(glue.class_of_node(u) for u in glue.attached
                                   if self.sigma_reachable(v, FVertex(u, 0)))
            self._classes[v] = result
        return self._classes[v]

    def is_infinite(self, v: Vertex) -> bool:
        self.spec.check_vertex(v)
        if isinstance(v, FVertex) and self.sigma_infinite(v.x, v.level):
            return True
        if self.spec.D.n == 0:
            return False
        return bool(self.classes(v) & self.glue.infinite_classes)

    def reachable(self, u: Vertex, v: Vertex) -> bool:
        self.spec.check_vertex(u)
        self.spec.check_vertex(v)
        if u == v:
            return True
        if isinstance(u, FVertex) and isinstance(v, FVertex) and self.sigma_reachable(u, v):
            return True
        if isinstance(u, DVertex) and isinstance(v, DVertex):
            if self.glue.component_of[u.d] == self.glue.component_of[v.d]:
                return True
        if self.spec.D.n == 0:
            return False
        return bool(self.classes(u) & self.classes(v))

    def precompute(self) -> "ReachabilityIndex":
        """Fill infinity verdicts for levels 0..p and closure tables for every infinite base."""
        for node in self.graph.nodes:
            for level in range(self.p + 1):
                self.finite_queue(node, level)
            if self.sigma_infinite(node, self.p):
                self.closure_table(node)
        if self.spec.D.n:
            self.glue
        return self

    def infinite_bases(self) -> List[int]:
        return [node for node in self.graph.nodes if self.sigma_infinite(node, self.p)]


def reachable(spec: UnfoldingSpec, u: Vertex, v: Vertex) -> bool:
    """Whether u and v lie in the same component of the unfolding."""
    return ReachabilityIndex(spec).reachable(u, v)


def closure_laws_hold(index: ReachabilityIndex, base: int) -> bool:
    """Closure 0 is the reach set of base, and the closures wrap around after one period."""
    table = index.closure_table(base)
    spec, graph = index.spec, index.graph
    wrapped = frozenset().union(*(reach_set(spec, u, graph) for u in graph.image(table.closure(table.period - 1))))
    return table.closures[0] == reach_set(spec, table.base, graph) and wrapped == table.closures[0]
