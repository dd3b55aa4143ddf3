"""
Connectivity of the whole unfolding.
"""
import logging
from typing import Optional

from networkx.utils import UnionFind

from ..formal.errors import DomainError
from ..formal.graphs import FVertex, UnfoldingSpec
from .analysis import SigmaGraph, build_sigma_graph, finite_reach, oriented_cycle_nonzero
from .reach_automaton import build_reach_automaton
from .reachability import ReachabilityIndex


logger = logging.getLogger(__name__)


def is_connected(spec: UnfoldingSpec, graph: Optional[SigmaGraph] = None) -> bool:
    """
    Whether the unfolding is a single (necessarily infinite) component.

    Without a prefix: some infinite component must exist, and every node
    of F^sigma must appear at offset 0 in the search from the node of
    vertex 0 at level 0 within the window [0, p].
    """
    graph = graph or build_sigma_graph(spec)
    if not oriented_cycle_nonzero(graph):
        logger.debug("No infinite component, so not connected")
        return False
    if spec.D.n:
        return _connected_with_prefix(spec, ReachabilityIndex(spec, graph))
    queue = finite_reach(spec, 0, 0, 0, spec.p, graph)
    found = queue.nodes_at(0)
    logger.debug("Nodes at offset 0 from vertex 0: %s of %d", sorted(found), len(graph.nodes))
    return found == frozenset(graph.nodes)


def _connected_with_prefix(spec: UnfoldingSpec, index: ReachabilityIndex) -> bool:
    glue = index.glue
    if any(not nodes for nodes in glue.attachments.values()):
        logger.debug("A D-component has no attachment to level 0")
        return False
    p = index.p
    nodes = index.graph.nodes
    if not all(index.sigma_infinite(u, p) for u in nodes):
        return False
    for u in nodes:
        for level in range(1, p + 1):
            if not index.sigma_infinite(u, level) and not index.finite_queue(u, level).nodes_at(-level):
                logger.debug("Finite component of node %d at level %d never reaches level 0", u, level)
                return False

    sets = UnionFind()
    for component, attached in glue.attachments.items():
        for w in attached:
            sets.union(("d", component), ("f", w))
    for k, u in enumerate(nodes):
        sets[("f", u)]
        for w in nodes[k + 1:]:
            if index.sigma_reachable(FVertex(u, 0), FVertex(w, 0)):
                sets.union(("f", u), ("f", w))
    return len(list(sets.to_sets())) == 1


def naive_connect(spec: UnfoldingSpec) -> bool:
    """Connectivity read off the reachability automaton: connected iff every state is final."""
    if spec.D.n:
        raise DomainError("naive_connect is defined only for specs without a prefix D")
    automaton = build_reach_automaton(spec)
    return automaton.finals == frozenset(automaton.states)
