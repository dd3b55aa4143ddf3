"""
Finite graphs, unfolding specs and the vertices of the graphs they generate.

An unfolding spec (D, F, eta, sigma) describes an infinite graph: the
prefix D, then copies F^0, F^1, ... of F. eta attaches D-vertices to F^0
and sigma links every x^i to the vertices y^(i+1) with y in sigma(x).
"""
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import VertexError


@dataclass(frozen=True)
class FiniteGraph:
    """Undirected simple graph on vertices 0..n-1, edges stored as (u, v) with u < v."""
    n: int
    edges: FrozenSet[Tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Self-loop on vertex {u} is not allowed")
            if not u < v:
                raise ValueError(f"Edge ({u}, {v}) is not stored canonically")
            if v >= self.n or u < 0:
                raise VertexError(f"Edge ({u}, {v}) outside vertex range [0, {self.n})")
        object.__setattr__(self, "edges", frozenset(self.edges))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "FiniteGraph":
        """Build from unordered pairs in any orientation."""
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"Self-loop on vertex {u} is not allowed")
            edges.add((min(u, v), max(u, v)))
        return cls(n, frozenset(edges))

    def neighbours(self, u: int) -> List[int]:
        return sorted([b for a, b in self.edges if a == u] + [a for a, b in self.edges if b == u])

    def padded(self, n: int) -> "FiniteGraph":
        if n < self.n:
            raise ValueError(f"Cannot pad {self.n} vertices down to {n}")
        return FiniteGraph(n, self.edges)


@dataclass(frozen=True, order=True)
class DVertex:
    """Vertex d of the finite prefix D."""
    d: int

    def __str__(self) -> str:
        return f"d{self.d}"


@dataclass(frozen=True, order=True)
class FVertex:
    """Copy x^level of block vertex x."""
    x: int
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise VertexError(f"Level must be non-negative, got {self.level}")

    def __str__(self) -> str:
        return f"f{self.x}@{self.level}"


Vertex = Union[DVertex, FVertex]


def _default_names(prefix: str, n: int, taken: Sequence[str] = ()) -> Tuple[str, ...]:
    names: List[str] = []
    used = set(taken)
    k = 0
    while len(names) < n:
        candidate = f"{prefix}{k}"
        k += 1
        if candidate not in used:
            names.append(candidate)
            used.add(candidate)
    return tuple(names)


def _freeze_images(images: Sequence[Iterable[int]]) -> Tuple[FrozenSet[int], ...]:
    return tuple(frozenset(image) for image in images)


@dataclass(frozen=True)
class UnfoldingSpec:
    """
    The tuple (D, F, eta, sigma) generating an infinite graph.

    eta[d] is the set of F-vertices whose level-0 copies are adjacent to d;
    sigma[x] the set of F-vertices y with x^i adjacent to y^(i+1) for all i.
    """
    D: FiniteGraph
    F: FiniteGraph
    eta: Tuple[FrozenSet[int], ...] = ()
    sigma: Tuple[FrozenSet[int], ...] = ()
    d_names: Optional[Tuple[str, ...]] = None
    f_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.F.n < 1:
            raise ValueError("F must have at least one vertex")
        eta = _freeze_images(self.eta) if self.eta else tuple(frozenset() for _ in range(self.D.n))
        sigma = _freeze_images(self.sigma) if self.sigma else tuple(frozenset() for _ in range(self.F.n))
        if len(eta) != self.D.n:
            raise ValueError(f"eta must have one image per D-vertex ({self.D.n}), got {len(eta)}")
        if len(sigma) != self.F.n:
            raise ValueError(f"sigma must have one image per F-vertex ({self.F.n}), got {len(sigma)}")
        for label, images in (("eta", eta), ("sigma", sigma)):
            for source, image in enumerate(images):
                bad = [y for y in image if not 0 <= y < self.F.n]
                if bad:
                    raise VertexError(f"{label}({source}) refers to unknown F-vertices {sorted(bad)}")
        d_names = tuple(self.d_names) if self.d_names is not None else _default_names("d", self.D.n)
        f_names = tuple(self.f_names) if self.f_names is not None else _default_names("f", self.F.n, d_names)
        if len(d_names) != self.D.n or len(f_names) != self.F.n:
            raise ValueError("Name tables must match the vertex counts of D and F")
        if len(set(d_names) | set(f_names)) != len(d_names) + len(f_names):
            raise ValueError("Vertex names must be unique across D and F")
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "d_names", d_names)
        object.__setattr__(self, "f_names", f_names)

    @property
    def p(self) -> int:
        """Working loop constant max(F.n, D.n, 1)."""
        return max(self.F.n, self.D.n, 1)

    def check_vertex(self, v: Vertex) -> Vertex:
        if isinstance(v, DVertex):
            if not 0 <= v.d < self.D.n:
                raise VertexError(f"D-vertex {v.d} outside [0, {self.D.n})")
        elif isinstance(v, FVertex):
            if not 0 <= v.x < self.F.n:
                raise VertexError(f"F-vertex {v.x} outside [0, {self.F.n})")
        else:
            raise VertexError(f"Not a vertex: {v!r}")
        return v

    def vertex_name(self, v: Vertex) -> str:
        self.check_vertex(v)
        if isinstance(v, DVertex):
            return self.d_names[v.d]
        return f"{self.f_names[v.x]}@{v.level}"

    def parse_vertex(self, text: str) -> Vertex:
        """Resolve `name@level` (F-copy) or bare `name` (D-vertex)."""
        text = text.strip()
        if "@" in text:
            name, _, level = text.partition("@")
            if name not in self.f_names:
                raise VertexError(f"Unknown F-vertex '{name}'")
            if not level.isdigit():
                raise VertexError(f"Level of '{text}' must be a non-negative integer")
            return FVertex(self.f_names.index(name), int(level))
        if text in self.d_names:
            return DVertex(self.d_names.index(text))
        if text in self.f_names:
            raise VertexError(f"F-vertex '{text}' needs a level, e.g. {text}@0")
        raise VertexError(f"Unknown vertex '{text}'")

    def vertices(self, max_level: int) -> Iterator[Vertex]:
        """All D-vertices, then every F-copy at levels 0..max_level."""
        for d in range(self.D.n):
            yield DVertex(d)
        for level in range(max_level + 1):
            for x in range(self.F.n):
                yield FVertex(x, level)

    def padded_to(self, p: int) -> "UnfoldingSpec":
        """Same graph with isolated vertices added so D.n = F.n = p."""
        if p < max(self.D.n, self.F.n):
            raise ValueError(f"Cannot pad D.n={self.D.n}, F.n={self.F.n} to {p}")
        taken = list(self.d_names) + list(self.f_names)
        extra_d = _default_names("d", p - self.D.n, taken)
        extra_f = _default_names("f", p - self.F.n, taken + list(extra_d))
        return UnfoldingSpec(
            D=self.D.padded(p),
            F=self.F.padded(p),
            eta=self.eta + tuple(frozenset() for _ in range(p - self.D.n)),
            sigma=self.sigma + tuple(frozenset() for _ in range(p - self.F.n)),
            d_names=self.d_names + extra_d,
            f_names=self.f_names + extra_f,
        )
