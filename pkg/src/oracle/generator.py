"""
Deterministic pseudo-random specs, digraphs and automata.

All randomness comes from a 64-bit multiplicative congruential stream:

    state_0     = (2 * seed + 1) mod 2^64
    state_{n+1} = state_n * 0xd1342543de82ef95 mod 2^64
    draw        = (state_{n+1} >> 11) / 2^53

so a seed reproduces the same objects on any platform.
"""
from typing import Dict, List, Set, Tuple

from ..formal.automaton import Symbol, UnaryPairAutomaton
from ..formal.graphs import FiniteGraph, UnfoldingSpec
from ..reasoning.analysis import SigmaGraph


MULTIPLIER = 0xD1342543DE82EF95
MASK = (1 << 64) - 1


class MCG64:
    """Multiplicative congruential generator producing floats in [0, 1)."""

    def __init__(self, seed: int):
        self.state = (2 * seed + 1) & MASK

    def uniform(self) -> float:
        self.state = (self.state * MULTIPLIER) & MASK
        return (self.state >> 11) / float(1 << 53)

    def below(self, n: int) -> int:
        """Integer in [0, n)."""
        return int(self.uniform() * n)

    def chance(self, density: float) -> bool:
        return self.uniform() < density


def generate_spec(seed: int, max_f: int, max_d: int, density: float) -> UnfoldingSpec:
    """
    Random spec with 1..max_f block vertices and 0..max_d prefix vertices.

    Every candidate edge, arc and attachment is kept independently with
    probability `density`, drawn in the order E_F, sigma, E_D, eta.
    """
    if max_f < 1 or max_d < 0:
        raise ValueError(f"Need max_f >= 1 and max_d >= 0, got {max_f}, {max_d}")
    rng = MCG64(seed)
    fn = 1 + rng.below(max_f)
    dn = rng.below(max_d + 1)
    f_edges = [(u, v) for u in range(fn) for v in range(u + 1, fn) if rng.chance(density)]
    sigma: List[Set[int]] = [set() for _ in range(fn)]
    for x in range(fn):
        for y in range(fn):
            if rng.chance(density):
                sigma[x].add(y)
    d_edges = [(u, v) for u in range(dn) for v in range(u + 1, dn) if rng.chance(density)]
    eta: List[Set[int]] = [set() for _ in range(dn)]
    for d in range(dn):
        for x in range(fn):
            if rng.chance(density):
                eta[d].add(x)
    return UnfoldingSpec(
        D=FiniteGraph(dn, frozenset(d_edges)),
        F=FiniteGraph(fn, frozenset(f_edges)),
        eta=tuple(frozenset(s) for s in eta),
        sigma=tuple(frozenset(s) for s in sigma),
    )


def ladder_spec(p: int) -> UnfoldingSpec:
    """p block vertices, sigma sending each one to the next cyclically; p infinite components, each of period p."""
    return UnfoldingSpec(
        D=FiniteGraph(0),
        F=FiniteGraph(p),
        sigma=tuple(frozenset([(x + 1) % p]) for x in range(p)),
    )


def random_digraph(seed: int, max_nodes: int = 5, max_arcs: int = 8) -> SigmaGraph:
    """Digraph on 1..max_nodes nodes with at most max_arcs distinct arcs, self-arcs allowed."""
    rng = MCG64(seed)
    n = 1 + rng.below(max_nodes)
    candidates = [(u, v) for u in range(n) for v in range(n)]
    count = rng.below(min(max_arcs, len(candidates)) + 1)
    arcs = set()
    while len(arcs) < count:
        arcs.add(candidates[rng.below(len(candidates))])
    return SigmaGraph.from_arcs(n, arcs)


def random_one_loop_automaton(seed: int, max_states: int = 12) -> UnaryPairAutomaton:
    """
    Random one-loop automaton: a PAIR-tail, a PAIR-loop and acyclic RIGHT-tails,
    optionally mirrored by LEFT-tails.
    """
    rng = MCG64(seed)
    loop_length = 1 + rng.below(4)
    tail_length = rng.below(4)
    mirrored = rng.chance(0.5)
    pair_states = [f"q{k}" for k in range(tail_length + loop_length)]
    states = list(pair_states)
    finals: Set[str] = set()
    transitions: Dict[Tuple[str, Symbol], str] = {}
    for k, state in enumerate(pair_states):
        successor = pair_states[k + 1] if k + 1 < len(pair_states) else pair_states[tail_length]
        transitions[(state, Symbol.PAIR)] = successor

    budget = max_states - len(states)
    phases = [(Symbol.RIGHT, "r")] + ([(Symbol.LEFT, "m")] if mirrored else [])
    for state in pair_states:
        cost = len(phases)
        room = budget // cost
        if room < 1 or not rng.chance(0.5):
            continue
        length = 1 + rng.below(min(room, 4))
        accepted = {d for d in range(1, length + 1) if rng.chance(0.5)}
        for symbol, tag in phases:
            previous = state
            for d in range(1, length + 1):
                name = f"{state}{tag}{d}"
                states.append(name)
                transitions[(previous, symbol)] = name
                if d in accepted:
                    finals.add(name)
                previous = name
        budget -= cost * length
    return UnaryPairAutomaton(states, pair_states[0], finals, transitions)
