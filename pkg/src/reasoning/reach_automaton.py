"""
The uniform reachability automaton of a prefix-free unfolding.

Vertex x^i is the unary string of length i*p + x. The automaton reads
the convolution of two such strings, shorter first, and accepts iff the
two vertices share a component.
"""
import logging
from typing import Dict, List, Optional, Set, Tuple

from ..extraction.unfolding import Encoding, encode_vertex
from ..formal.automaton import Symbol, UnaryPairAutomaton
from ..formal.errors import DomainError
from ..formal.graphs import FVertex, UnfoldingSpec
from .reachability import ReachabilityIndex


logger = logging.getLogger(__name__)


def state_bound(p: int) -> int:
    """Upper bound on the number of states of the automaton built for loop constant p."""
    return 2 * p ** 4 + 2 * p ** 3 + p ** 2 + p


class _Builder:
    def __init__(self, index: ReachabilityIndex):
        self.index = index
        self.p = index.spec.F.n
        self.states: List[str] = []
        self.finals: Set[str] = set()
        self.transitions: Dict[Tuple[str, Symbol], str] = {}

    def add(self, name: str, final: bool) -> str:
        self.states.append(name)
        if final:
            self.finals.add(name)
        return name

    def connected(self, start: int, gap: int) -> bool:
        p = self.p
        level, x = divmod(start, p)
        target_level, y = divmod(start + gap, p)
        return self.index.sigma_reachable(FVertex(x, level), FVertex(y, target_level))

    def right_chain(self, source: str, start: int, tail: int, loop: int) -> None:
        """RIGHT-tail of `tail` states from source, then a RIGHT-loop of `loop` states."""
        previous = source
        for d in range(1, tail + 1):
            state = self.add(f"{source}_r{d}", self.connected(start, d))
            self.transitions[(previous, Symbol.RIGHT)] = state
            previous = state
        if not loop:
            return
        first = None
        for k in range(1, loop + 1):
            state = self.add(f"{source}_c{k}", self.connected(start, tail + k))
            self.transitions[(previous, Symbol.RIGHT)] = state
            first = first or state
            previous = state
        self.transitions[(previous, Symbol.RIGHT)] = first


def build_reach_automaton(spec: UnfoldingSpec, index: Optional[ReachabilityIndex] = None) -> UnaryPairAutomaton:
    """
    Build the automaton accepting (1^a, 1^b), a <= b, iff the encoded vertices are connected.

    Layout: a PAIR-tail t0..t{p^2-1} covering levels below p, a PAIR-loop
    l0..l{p-1} standing for every level >= p, and from each PAIR state a
    RIGHT-tail, followed by a RIGHT-loop of length r*p when the source is
    in an infinite component. All PAIR states are final.
    """
    if spec.D.n:
        raise DomainError("The reachability automaton is defined only for specs without a prefix D")
    index = index or ReachabilityIndex(spec)
    builder = _Builder(index)
    p = builder.p
    square = p * p

    tail = [builder.add(f"t{a}", True) for a in range(square)]
    loop = [builder.add(f"l{x}", True) for x in range(p)]
    pair_chain = tail + loop
    for k, state in enumerate(pair_chain):
        successor = pair_chain[k + 1] if k + 1 < len(pair_chain) else loop[0]
        builder.transitions[(state, Symbol.PAIR)] = successor

    for a, state in enumerate(tail):
        level, x = divmod(a, p)
        period = index.closure_table(x).period * p if index.sigma_infinite(x, level) else 0
        builder.right_chain(state, a, square - x, period)
    for x, state in enumerate(loop):
        if index.sigma_infinite(x, p):
            builder.right_chain(state, square + x, 0, index.closure_table(x).period * p)
        else:
            builder.right_chain(state, square + x, square, 0)

    automaton = UnaryPairAutomaton(builder.states, tail[0], builder.finals, builder.transitions)
    bound = state_bound(p)
    if len(automaton) > bound:
        raise AssertionError(f"Reachability automaton has {len(automaton)} states, above the bound {bound}")
    logger.debug("Reachability automaton for p=%d: %d states (bound %d, coarse estimate %d)",
                 p, len(automaton), bound, 2 * p ** 4 + p ** 3)
    return automaton


def simulate_reach_automaton(automaton: UnaryPairAutomaton, u: FVertex, v: FVertex, p: int) -> bool:
    """Run the automaton on the convolution of the two encoded vertices, shorter first."""
    a = encode_vertex(u, p, Encoding.PURE_SIGMA)
    b = encode_vertex(v, p, Encoding.PURE_SIGMA)
    low, high = min(a, b), max(a, b)
    return automaton.accepts((Symbol.PAIR,) * low + (Symbol.RIGHT,) * (high - low))
