"""
Deterministic two-tape automata over the unary alphabet.

A pair (1^n, 1^m) is read as its convolution: PAIR^n when n = m,
PAIR^m LEFT^(n-m) when n > m and PAIR^n RIGHT^(m-n) when n < m.
"""
import logging
from collections import deque
from enum import Enum
from itertools import islice
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import AutomatonShapeError


logger = logging.getLogger(__name__)


class Symbol(str, Enum):
    """Letters of the convolution alphabet, written as in .upa files."""

    PAIR = "11"
    LEFT = "1_"
    RIGHT = "_1"


SYMBOL_ORDER: Tuple[Symbol, ...] = (Symbol.PAIR, Symbol.LEFT, Symbol.RIGHT)

Word = Tuple[Symbol, ...]


def convolve(n: int, m: int) -> Word:
    """Return the convolution word of (1^n, 1^m)."""
    if n < 0 or m < 0:
        raise ValueError(f"Word lengths must be non-negative, got ({n}, {m})")
    common = min(n, m)
    if n > m:
        return (Symbol.PAIR,) * common + (Symbol.LEFT,) * (n - m)
    return (Symbol.PAIR,) * common + (Symbol.RIGHT,) * (m - n)


class UnaryPairAutomaton:
    """
    Deterministic automaton over PAIR, LEFT and RIGHT.

    States unreachable from the initial state are dropped on construction,
    so every state of an instance is reachable. Once a run has read LEFT
    (or RIGHT) it can only continue with the same letter.
    """

    def __init__(self,
                 states: Iterable[str],
                 initial: str,
                 finals: Iterable[str],
                 transitions: Mapping[Tuple[str, Symbol], str]):
        declared = list(states)
        if len(set(declared)) != len(declared):
            raise AutomatonShapeError("State names must be unique")
        known = set(declared)
        if initial not in known:
            raise AutomatonShapeError(f"Initial state '{initial}' is not a declared state")

        final_set = frozenset(finals)
        unknown_finals = final_set - known
        if unknown_finals:
            raise AutomatonShapeError(f"Unknown final states: {sorted(unknown_finals)}")

        delta: Dict[Tuple[str, Symbol], str] = {}
        for (source, symbol), target in transitions.items():
            if source not in known or target not in known:
                raise AutomatonShapeError(f"Transition {source} --{symbol}--> {target} uses an unknown state")
            delta[(source, Symbol(symbol))] = target

        self._initial = initial
        self._delta = delta
        order = self._reachable_order(initial)
        if len(order) < len(declared):
            logger.debug("Pruned %d unreachable states", len(declared) - len(order))
        keep = set(order)
        self._states: Tuple[str, ...] = tuple(s for s in declared if s in keep)
        self._finals: FrozenSet[str] = frozenset(s for s in final_set if s in keep)
        self._delta = {k: v for k, v in delta.items() if k[0] in keep}
        self._check_phases()

    @property
    def states(self) -> Tuple[str, ...]:
        return self._states

    @property
    def initial(self) -> str:
        return self._initial

    @property
    def finals(self) -> FrozenSet[str]:
        return self._finals

    @property
    def transitions(self) -> Dict[Tuple[str, Symbol], str]:
        return dict(self._delta)

    def step(self, state: str, symbol: Symbol) -> Optional[str]:
        return self._delta.get((state, symbol))

    def run(self, word: Sequence[Symbol]) -> Optional[str]:
        """Return the state reached after reading word, or None if the run dies."""
        state: Optional[str] = self._initial
        for symbol in word:
            state = self._delta.get((state, symbol))
            if state is None:
                return None
        return state

    def accepts(self, word: Sequence[Symbol]) -> bool:
        return self.run(word) in self._finals

    def accepts_pair(self, n: int, m: int) -> bool:
        """Whether (1^n, 1^m) is in the recognized relation."""
        return self.accepts(convolve(n, m))

    def bfs_order(self) -> List[str]:
        """States in breadth-first order from the initial state, symbols in PAIR, LEFT, RIGHT order."""
        return self._reachable_order(self._initial)

    def _reachable_order(self, start: str) -> List[str]:
        order = [start]
        seen = {start}
        queue = deque([start])
        while queue:
            state = queue.popleft()
            for symbol in SYMBOL_ORDER:
                target = self._delta.get((state, symbol))
                if target is not None and target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def _check_phases(self) -> None:
        entered: Dict[str, Set[Symbol]] = {}
        for (_, symbol), target in self._delta.items():
            entered.setdefault(target, set()).add(symbol)
        for (source, symbol), target in self._delta.items():
            for phase in (Symbol.LEFT, Symbol.RIGHT):
                if phase in entered.get(source, ()) and symbol != phase:
                    raise AutomatonShapeError(
                        f"Phase violation: state '{source}' is entered by {phase.value} "
                        f"but leaves on {symbol.value}"
                    )

    def __len__(self) -> int:
        return len(self._states)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnaryPairAutomaton):
            return False
        return (self._states == other._states and self._initial == other._initial
                and self._finals == other._finals and self._delta == other._delta)

    def __repr__(self) -> str:
        return (f"UnaryPairAutomaton(states={len(self._states)}, initial={self._initial!r}, "
                f"finals={len(self._finals)}, transitions={len(self._delta)})")


def _transition_graph(automaton: UnaryPairAutomaton) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(automaton.states)
    for (source, symbol), target in automaton.transitions.items():
        if graph.has_edge(source, target):
            graph[source][target]["symbols"].add(symbol)
        else:
            graph.add_edge(source, target, symbols={symbol})
    return graph


def is_one_loop(automaton: UnaryPairAutomaton) -> bool:
    """True iff the transition diagram has exactly one cycle and that cycle reads only PAIR."""
    graph = _transition_graph(automaton)
    cycles = list(islice(nx.simple_cycles(graph), 2))
    if len(cycles) != 1:
        return False
    cycle = cycles[0]
    for k, source in enumerate(cycle):
        target = cycle[(k + 1) % len(cycle)]
        if graph[source][target]["symbols"] != {Symbol.PAIR}:
            return False
    return True


def distinguishing_word(a: UnaryPairAutomaton, b: UnaryPairAutomaton) -> Optional[Word]:
    """Shortest word accepted by exactly one of a and b, or None if they are equivalent."""
    start = (a.initial, b.initial)
    parent: Dict[Tuple[Optional[str], Optional[str]], Tuple[Tuple[Optional[str], Optional[str]], Symbol]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        left, right = pair
        if (left in a.finals) != (right in b.finals):
            word: List[Symbol] = []
            while pair != start:
                pair, symbol = parent[pair]
                word.append(symbol)
            return tuple(reversed(word))
        for symbol in SYMBOL_ORDER:
            nxt = (
                a.step(left, symbol) if left is not None else None,
                b.step(right, symbol) if right is not None else None,
            )
            if nxt == (None, None) or nxt in seen:
                continue
            seen.add(nxt)
            parent[nxt] = (pair, symbol)
            queue.append(nxt)
    return None


def dfa_equivalent(a: UnaryPairAutomaton, b: UnaryPairAutomaton) -> bool:
    """Whether a and b recognize the same relation."""
    return distinguishing_word(a, b) is None
