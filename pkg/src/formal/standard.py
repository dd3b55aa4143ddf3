"""
Standard one-loop automata and the operations defined on them.

A standard automaton has a PAIR-tail q_0..q_{p-1} feeding a PAIR-loop
q'_0..q'_{p-1}, plus acyclic RIGHT-tails. Only the accepted RIGHT
distances are stored: (i, d) in tail_finals means the run that reads
PAIR^i RIGHT^d accepts, (v, d) in loop_finals means the same from q'_v.
LEFT-tails are implicit mirrors of the RIGHT-tails.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Set, Tuple

from .automaton import Symbol, UnaryPairAutomaton, is_one_loop
from .errors import AutomatonShapeError


logger = logging.getLogger(__name__)

Finals = FrozenSet[Tuple[int, int]]


@dataclass(frozen=True)
class VertexNames:
    """Display names for the D (tail) and F (loop) vertices."""
    d: Tuple[str, ...]
    f: Tuple[str, ...]


@dataclass(frozen=True)
class OneLoopStandardAutomaton:
    """Standard one-loop automaton with loop constant p."""
    p: int
    tail_finals: Finals = frozenset()
    loop_finals: Finals = frozenset()
    names: Optional[VertexNames] = field(default=None, compare=False)

    def __post_init__(self):
        if self.p < 1:
            raise AutomatonShapeError(f"Loop constant must be positive, got {self.p}")
        object.__setattr__(self, "tail_finals", frozenset(self.tail_finals))
        object.__setattr__(self, "loop_finals", frozenset(self.loop_finals))
        for label, finals in (("tail", self.tail_finals), ("loop", self.loop_finals)):
            for index, distance in finals:
                if not 0 <= index < self.p:
                    raise AutomatonShapeError(f"{label} index {index} outside [0, {self.p})")
                if not 1 <= distance <= 2 * self.p - 1 - index:
                    raise AutomatonShapeError(
                        f"{label} final ({index}, {distance}) does not land in the next copy"
                    )
        if self.names is not None and (len(self.names.d) != self.p or len(self.names.f) != self.p):
            raise AutomatonShapeError("Vertex name tables must have exactly p entries each")

    def distances_at(self, position: int) -> FrozenSet[int]:
        """Accepted RIGHT distances from the PAIR state reached after `position` PAIR letters."""
        if position < 0:
            raise ValueError(f"Position must be non-negative, got {position}")
        if position < self.p:
            return frozenset(d for i, d in self.tail_finals if i == position)
        v = (position - self.p) % self.p
        return frozenset(d for w, d in self.loop_finals if w == v)

    def accepts_pair(self, n: int, m: int) -> bool:
        """Whether (1^n, 1^m) is an edge; the relation is symmetric and irreflexive."""
        low, high = min(n, m), max(n, m)
        if low == high:
            return False
        return (high - low) in self.distances_at(low)

    def to_pair_automaton(self, symmetric: bool = True) -> UnaryPairAutomaton:
        """
        Expand into a UnaryPairAutomaton with 2p PAIR states.

        Args:
            symmetric: also add LEFT-tails mirroring every RIGHT-tail

        Returns:
            Automaton whose only cycle is the PAIR loop
        """
        p = self.p
        pair_states = [f"t{i}" for i in range(p)] + [f"l{v}" for v in range(p)]
        states: List[str] = list(pair_states)
        finals: Set[str] = set()
        transitions: Dict[Tuple[str, Symbol], str] = {}

        for k in range(2 * p):
            successor = pair_states[k + 1] if k + 1 < 2 * p else pair_states[p]
            transitions[(pair_states[k], Symbol.PAIR)] = successor

        phases = [(Symbol.RIGHT, "r")] + ([(Symbol.LEFT, "m")] if symmetric else [])
        for k, source in enumerate(pair_states):
            accepted = self.distances_at(k)
            if not accepted:
                continue
            for symbol, tag in phases:
                previous = source
                for d in range(1, max(accepted) + 1):
                    state = f"{source}{tag}{d}"
                    states.append(state)
                    transitions[(previous, symbol)] = state
                    if d in accepted:
                        finals.add(state)
                    previous = state

        return UnaryPairAutomaton(states, pair_states[0], finals, transitions)

    def __str__(self) -> str:
        return f"OneLoopStandardAutomaton(p={self.p}, tail={sorted(self.tail_finals)}, loop={sorted(self.loop_finals)})"


def _chain_distances(automaton: UnaryPairAutomaton, start: str, symbol: Symbol) -> FrozenSet[int]:
    distances = set()
    state = automaton.step(start, symbol)
    d = 1
    seen = set()
    while state is not None:
        if state in seen:
            raise AutomatonShapeError(f"{symbol.value}-cycle reachable from '{start}'")
        seen.add(state)
        if state in automaton.finals:
            distances.add(d)
        state = automaton.step(state, symbol)
        d += 1
    return frozenset(distances)


def standardize_one_loop(automaton: UnaryPairAutomaton) -> OneLoopStandardAutomaton:
    """
    Convert a one-loop automaton into the equivalent standard form.

    The loop constant is the least multiple of the PAIR-loop length that
    covers the PAIR-tail and keeps every accepted RIGHT distance inside
    the next copy of the loop.
    """
    if not is_one_loop(automaton):
        raise AutomatonShapeError("Automaton is not one-loop: expected exactly one cycle, made of PAIR transitions")

    path: List[str] = []
    position: Dict[str, int] = {}
    state: Optional[str] = automaton.initial
    while state is not None and state not in position:
        position[state] = len(path)
        path.append(state)
        state = automaton.step(state, Symbol.PAIR)
    if state is None:
        raise AutomatonShapeError("PAIR chain from the initial state never enters the loop")

    tail_length = position[state]
    loop_length = len(path) - tail_length

    distances: List[FrozenSet[int]] = []
    mirrored: List[FrozenSet[int]] = []
    for pair_state in path:
        if pair_state in automaton.finals:
            raise AutomatonShapeError(f"PAIR state '{pair_state}' is final, which would add a self-loop")
        distances.append(_chain_distances(automaton, pair_state, Symbol.RIGHT))
        mirrored.append(_chain_distances(automaton, pair_state, Symbol.LEFT))
    if any(mirrored) and mirrored != distances:
        raise AutomatonShapeError("LEFT-tails must mirror the RIGHT-tails from every PAIR state")

    def original(n: int) -> FrozenSet[int]:
        if n < len(path):
            return distances[n]
        return distances[tail_length + (n - tail_length) % loop_length]

    p = loop_length
    while True:
        if p >= tail_length and all(
                n % p + d <= 2 * p - 1 for n in range(2 * p) for d in original(n)):
            break
        p += loop_length

    tail_finals = frozenset((i, d) for i in range(p) for d in original(i))
    loop_finals = frozenset((v, d) for v in range(p) for d in original(p + v))
    logger.debug("Standardized %d-state automaton: tail %d, loop %d, p=%d",
                 len(automaton), tail_length, loop_length, p)
    return OneLoopStandardAutomaton(p, tail_finals, loop_finals)


def _combine(a: OneLoopStandardAutomaton,
             b: OneLoopStandardAutomaton,
             merge: Callable[[FrozenSet[int], FrozenSet[int]], FrozenSet[int]]) -> OneLoopStandardAutomaton:
    p = a.p * b.p
    tail = frozenset((i, d) for i in range(p) for d in merge(a.distances_at(i), b.distances_at(i)))
    loop = frozenset((v, d) for v in range(p) for d in merge(a.distances_at(p + v), b.distances_at(p + v)))
    return OneLoopStandardAutomaton(p, tail, loop)


def union_graph(a: OneLoopStandardAutomaton, b: OneLoopStandardAutomaton) -> OneLoopStandardAutomaton:
    """Graph on the same vertices whose edges are those of a or b; loop constant a.p * b.p."""
    return _combine(a, b, lambda x, y: x | y)


def intersection_graph(a: OneLoopStandardAutomaton, b: OneLoopStandardAutomaton) -> OneLoopStandardAutomaton:
    """Graph whose edges belong to both a and b; loop constant a.p * b.p."""
    return _combine(a, b, lambda x, y: x & y)


def band_complement(a: OneLoopStandardAutomaton) -> OneLoopStandardAutomaton:
    """Toggle every legal RIGHT final, keeping the shape and loop constant of a."""
    p = a.p
    tail = frozenset((i, d) for i in range(p) for d in range(1, 2 * p - i) if (i, d) not in a.tail_finals)
    loop = frozenset((v, d) for v in range(p) for d in range(1, 2 * p - v) if (v, d) not in a.loop_finals)
    return OneLoopStandardAutomaton(p, tail, loop)
