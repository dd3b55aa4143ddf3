"""
Brute-force answers computed on finite truncations of the unfolding.

Every answer is computed twice, the second time p levels deeper, and
the two must agree.
"""
import logging
from typing import Dict, Optional

import networkx as nx

from ..config import get_settings
from ..extraction.unfolding import Truncation, truncate
from ..formal.errors import OracleStabilityError
from ..formal.graphs import FVertex, UnfoldingSpec, Vertex


logger = logging.getLogger(__name__)


def _level(v: Vertex) -> int:
    return v.level if isinstance(v, FVertex) else 0


class TruncationIndex:
    """A truncation with its component labelling."""

    def __init__(self, spec: UnfoldingSpec, depth: int):
        self.spec = spec
        self.depth = depth
        self.truncation: Truncation = truncate(spec, depth)
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(self.truncation.graph.n))
        self.graph.add_edges_from(self.truncation.graph.edges)
        self._component: Dict[int, int] = {}
        self._pumping: Dict[int, bool] = {}
        for label, members in enumerate(nx.connected_components(self.graph)):
            copies: Dict[int, int] = {}
            pumped = False
            for index in members:
                self._component[index] = label
                vertex = self.truncation.vertex_at(index)
                if isinstance(vertex, FVertex) and vertex.level >= spec.p:
                    copies[vertex.x] = copies.get(vertex.x, 0) + 1
                    pumped = pumped or copies[vertex.x] > 1
            self._pumping[label] = pumped

    def index_of(self, v: Vertex) -> int:
        return self.truncation.index_of(v)

    def vertex_at(self, index: int) -> Vertex:
        return self.truncation.vertex_at(index)

    def connected(self, u: Vertex, v: Vertex) -> bool:
        return self._component[self.index_of(u)] == self._component[self.index_of(v)]

    def has_pumping_witness(self, v: Vertex) -> bool:
        """
        Whether v's component holds two copies of one F-vertex at levels >= p.

        Components glued together through D stay below level p, so copies
        there are not counted.
        """
        return self._pumping[self._component[self.index_of(v)]]

    def bfs_connected(self, u: Vertex, v: Vertex) -> bool:
        """Plain breadth-first search, independent of the component labelling."""
        source, target = self.index_of(u), self.index_of(v)
        return target in nx.single_source_shortest_path_length(self.graph, source)


class Oracle:
    """Reference answers for one spec, with truncations cached by depth."""

    def __init__(self, spec: UnfoldingSpec, slack: Optional[int] = None):
        self.spec = spec
        self.slack = get_settings().oracle_slack if slack is None else slack
        self._truncations: Dict[int, TruncationIndex] = {}

    def at_depth(self, depth: int) -> TruncationIndex:
        if depth not in self._truncations:
            self._truncations[depth] = TruncationIndex(self.spec, depth)
        return self._truncations[depth]

    def _stable(self, query: str, depth: int, answer) -> bool:
        shallow = answer(self.at_depth(depth))
        deep = answer(self.at_depth(depth + self.spec.p))
        if shallow != deep:
            raise OracleStabilityError(query, shallow, deep, depth)
        return shallow

    def reachable(self, u: Vertex, v: Vertex) -> bool:
        self.spec.check_vertex(u)
        self.spec.check_vertex(v)
        depth = max(_level(u), _level(v)) + 2 * self.spec.p + self.slack
        return self._stable(f"reach({u}, {v})", depth, lambda t: t.connected(u, v))

    def infinite(self, v: Vertex) -> bool:
        self.spec.check_vertex(v)
        depth = _level(v) + 3 * self.spec.p + self.slack
        return self._stable(f"infinite({v})", depth, lambda t: t.has_pumping_witness(v))

    def has_infinite(self) -> bool:
        return any(self.infinite(FVertex(x, level))
                   for level in range(self.spec.p + 1) for x in range(self.spec.F.n))


def oracle_reachable(spec: UnfoldingSpec, u: Vertex, v: Vertex) -> bool:
    """Breadth-first search on a truncation deep enough to contain a connecting path."""
    oracle = Oracle(spec)
    depth = max(_level(u), _level(v)) + 2 * spec.p + oracle.slack
    shallow = oracle.at_depth(depth).bfs_connected(u, v)
    deep = oracle.at_depth(depth + spec.p).bfs_connected(u, v)
    if shallow != deep:
        raise OracleStabilityError(f"reach({u}, {v})", shallow, deep, depth)
    return shallow


def oracle_infinite(spec: UnfoldingSpec, v: Vertex) -> bool:
    """Pumping test: v's component in the truncation repeats some F-vertex."""
    return Oracle(spec).infinite(v)


def oracle_has_infinite(spec: UnfoldingSpec) -> bool:
    return Oracle(spec).has_infinite()
