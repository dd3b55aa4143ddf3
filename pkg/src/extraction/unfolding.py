"""
Conversions between standard one-loop automata and unfolding specs.

Also materializes finite truncations of the generated infinite graph and
maps vertices to and from the unary lengths that encode them.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Set, Tuple

from ..formal.errors import VertexError
from ..formal.graphs import DVertex, FiniteGraph, FVertex, UnfoldingSpec, Vertex
from ..formal.standard import OneLoopStandardAutomaton, VertexNames


logger = logging.getLogger(__name__)


class Encoding(str, Enum):
    """How F-copies are laid out on the unary line."""

    WITH_PREFIX = "with-d"
    PURE_SIGMA = "pure-sigma"


def extract_spec(automaton: OneLoopStandardAutomaton) -> UnfoldingSpec:
    """
    Read the spec (D, F, eta, sigma) off a standard automaton in O(p^2).

    Tail states become D-vertices and loop states F-vertices. A final at
    distance d from source i is an edge inside the block when i + d < p,
    otherwise it lands on index i + d - p of the next block.
    """
    p = automaton.p

    def split(finals) -> Tuple[FiniteGraph, Tuple[frozenset, ...]]:
        edges = set()
        images: List[Set[int]] = [set() for _ in range(p)]
        for source, distance in finals:
            target = source + distance
            if target < p:
                edges.add((source, target))
            else:
                images[source].add(target - p)
        return FiniteGraph(p, frozenset(edges)), tuple(frozenset(image) for image in images)

    D, eta = split(automaton.tail_finals)
    F, sigma = split(automaton.loop_finals)
    names = automaton.names
    return UnfoldingSpec(
        D=D, F=F, eta=eta, sigma=sigma,
        d_names=names.d if names else None,
        f_names=names.f if names else None,
    )


def synthesize_automaton(spec: UnfoldingSpec) -> OneLoopStandardAutomaton:
    """Inverse of extract_spec; D and F are padded with isolated vertices up to p."""
    p = spec.p
    padded = spec.padded_to(p)
    tail = {(u, v - u) for u, v in padded.D.edges}
    tail |= {(d, p + x - d) for d, image in enumerate(padded.eta) for x in image}
    loop = {(u, v - u) for u, v in padded.F.edges}
    loop |= {(x, p + y - x) for x, image in enumerate(padded.sigma) for y in image}
    return OneLoopStandardAutomaton(
        p, frozenset(tail), frozenset(loop),
        names=VertexNames(d=padded.d_names, f=padded.f_names),
    )


@dataclass(frozen=True)
class Truncation:
    """The finite subgraph on D and F^0..F^depth with a dense vertex index."""
    spec: UnfoldingSpec
    depth: int
    graph: FiniteGraph

    def index_of(self, v: Vertex) -> int:
        self.spec.check_vertex(v)
        if isinstance(v, DVertex):
            return v.d
        if v.level > self.depth:
            raise VertexError(f"Level {v.level} is beyond truncation depth {self.depth}")
        return self.spec.D.n + v.level * self.spec.F.n + v.x

    def vertex_at(self, index: int) -> Vertex:
        if not 0 <= index < self.graph.n:
            raise VertexError(f"Index {index} outside [0, {self.graph.n})")
        if index < self.spec.D.n:
            return DVertex(index)
        level, x = divmod(index - self.spec.D.n, self.spec.F.n)
        return FVertex(x, level)


def truncate(spec: UnfoldingSpec, depth: int) -> Truncation:
    """Induced subgraph of the unfolding on D and the copies F^0..F^depth."""
    if depth < 0:
        raise ValueError(f"Truncation depth must be non-negative, got {depth}")
    dn, fn = spec.D.n, spec.F.n

    def at(x: int, level: int) -> int:
        return dn + level * fn + x

    edges = set(spec.D.edges)
    for d, image in enumerate(spec.eta):
        edges.update((d, at(x, 0)) for x in image)
    for level in range(depth + 1):
        edges.update((at(u, level), at(v, level)) for u, v in spec.F.edges)
        if level < depth:
            for x, image in enumerate(spec.sigma):
                edges.update((at(x, level), at(y, level + 1)) for y in image)
    graph = FiniteGraph(dn + fn * (depth + 1), frozenset(edges))
    logger.debug("Truncated at depth %d: %d vertices, %d edges", depth, graph.n, len(edges))
    return Truncation(spec, depth, graph)


def encode_vertex(v: Vertex, p: int, encoding: Encoding = Encoding.WITH_PREFIX) -> int:
    """
    Unary length representing v.

    With the prefix, D-vertices take lengths 0..p-1 and x^i is p + i*p + x.
    Without it x^i is i*p + x and D-vertices have no encoding.
    """
    if p < 1:
        raise ValueError(f"Loop constant must be positive, got {p}")
    if isinstance(v, DVertex):
        if encoding is Encoding.PURE_SIGMA:
            raise VertexError("D-vertices have no encoding without the prefix")
        if not 0 <= v.d < p:
            raise VertexError(f"D-vertex {v.d} outside [0, {p})")
        return v.d
    if not 0 <= v.x < p:
        raise VertexError(f"F-vertex {v.x} outside [0, {p})")
    offset = p if encoding is Encoding.WITH_PREFIX else 0
    return offset + v.level * p + v.x


def decode_vertex(n: int, p: int, encoding: Encoding = Encoding.WITH_PREFIX) -> Vertex:
    """Inverse of encode_vertex under the same encoding."""
    if p < 1:
        raise ValueError(f"Loop constant must be positive, got {p}")
    if n < 0:
        raise VertexError(f"Unary length must be non-negative, got {n}")
    if encoding is Encoding.WITH_PREFIX:
        if n < p:
            return DVertex(n)
        n -= p
    level, x = divmod(n, p)
    return FVertex(x, level)

