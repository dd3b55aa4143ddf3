"""
Readers and writers for the two text formats.

.upa files describe a UnaryPairAutomaton:

    states: q0 q1
    initial: q0
    final: q1
    trans: q0 11 q1

.ugs files describe an UnfoldingSpec:

    dvertices: d0
    fvertices: a b
    dedges:
    fedges: a-b
    eta: d0 -> a
    sigma: a -> b

Both are line oriented, `#` starts a comment and blank lines are ignored.
Every error carries the 1-based line and column of the offending token.
"""
import re
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple, Union

from .automaton import SYMBOL_ORDER, Symbol, UnaryPairAutomaton
from .errors import FormatError
from .graphs import FiniteGraph, UnfoldingSpec
from .standard import OneLoopStandardAutomaton


IDENTIFIER = re.compile(r"^[A-Za-z0-9_]+$")
TOKEN = re.compile(r"\S+")

Token = Tuple[int, str]


def _tokenize(line: str) -> List[Token]:
    """Split a line into (column, text) tokens, dropping any comment."""
    body = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in TOKEN.finditer(body)]


def _split_key(tokens: List[Token]) -> Tuple[Token, List[Token]]:
    """Separate a leading `key:` from the rest, also accepting `key:value` glued together."""
    column, first = tokens[0]
    if ":" not in first:
        return (column, first), tokens[1:]
    key, _, rest = first.partition(":")
    remaining = tokens[1:]
    if rest:
        remaining = [(column + len(key) + 1, rest)] + remaining
    return (column, key + ":"), remaining


class AutomatonParser:
    """Parser and serializer for the .upa automaton format."""

    KIND = "upa"
    SECTIONS = ("states:", "initial:", "final:", "trans:")

    def _error(self, line: int, column: int, reason: str) -> FormatError:
        return FormatError(self.KIND, line, column, reason)

    def parse(self, text: str) -> UnaryPairAutomaton:
        """
        Parse .upa text into an automaton with unreachable states pruned.

        Raises:
            FormatError: syntax errors, duplicate transitions, unknown states
            AutomatonShapeError: phase discipline violations
        """
        states: List[str] = []
        state_set: Set[str] = set()
        initial: Optional[Tuple[int, int, str]] = None
        finals: List[Tuple[int, int, str]] = []
        seen_sections: Set[str] = set()
        triples: List[Tuple[int, int, str, Symbol, int, str]] = []
        transitions: Dict[Tuple[str, Symbol], str] = {}

        for number, line in enumerate(text.splitlines(), start=1):
            tokens = _tokenize(line)
            if not tokens:
                continue
            (column, key), values = _split_key(tokens)
            if key not in self.SECTIONS:
                raise self._error(number, column, f"unknown section '{key.rstrip(':')}'")

            if key == "states:":
                if "states:" in seen_sections:
                    raise self._error(number, column, "duplicate states section")
                if not values:
                    raise self._error(number, column, "states section lists no states")
                for col, name in values:
                    if not IDENTIFIER.match(name):
                        raise self._error(number, col, f"invalid state name '{name}'")
                    if name in state_set:
                        raise self._error(number, col, f"state '{name}' declared twice")
                    states.append(name)
                    state_set.add(name)
            elif key == "initial:":
                if "initial:" in seen_sections:
                    raise self._error(number, column, "duplicate initial section")
                if len(values) != 1:
                    raise self._error(number, column, "initial section needs exactly one state")
                initial = (number, values[0][0], values[0][1])
            elif key == "final:":
                if "final:" in seen_sections:
                    raise self._error(number, column, "duplicate final section")
                finals.extend((number, col, name) for col, name in values)
            else:
                if len(values) != 3:
                    raise self._error(number, column, "transition needs <src> <sym> <dst>")
                (src_col, src), (sym_col, sym), (dst_col, dst) = values
                try:
                    symbol = Symbol(sym)
                except ValueError:
                    raise self._error(number, sym_col, f"unknown symbol '{sym}', expected 11, 1_ or _1")
                if (src, symbol) in transitions:
                    raise self._error(number, src_col, f"duplicate transition from '{src}' on {sym}")
                transitions[(src, symbol)] = dst
                triples.append((number, src_col, src, symbol, dst_col, dst))
            seen_sections.add(key)

        if "states:" not in seen_sections:
            raise self._error(1, 1, "missing states section")
        if initial is None:
            raise self._error(1, 1, "missing initial section")

        def known(number: int, column: int, name: str) -> str:
            if name not in state_set:
                raise self._error(number, column, f"unknown state '{name}'")
            return name

        known(*initial)
        for entry in finals:
            known(*entry)
        for number, src_col, src, _, dst_col, dst in triples:
            known(number, src_col, src)
            known(number, dst_col, dst)

        return UnaryPairAutomaton(states, initial[2], [name for _, _, name in finals], transitions)

    def serialize(self, automaton: UnaryPairAutomaton) -> str:
        """Write states in BFS order from the initial state, transitions in the same order."""
        order = automaton.bfs_order()
        lines = [
            "states: " + " ".join(order),
            f"initial: {automaton.initial}",
            ("final: " + " ".join(s for s in order if s in automaton.finals)).rstrip(),
        ]
        for state in order:
            for symbol in SYMBOL_ORDER:
                target = automaton.step(state, symbol)
                if target is not None:
                    lines.append(f"trans: {state} {symbol.value} {target}")
        return "\n".join(lines) + "\n"


class SpecParser:
    """Parser and serializer for the .ugs unfolding-spec format."""

    KIND = "ugs"
    SECTIONS = ("dvertices:", "fvertices:", "dedges:", "fedges:", "eta:", "sigma:")
    PER_LEVEL = re.compile(r"^sigma(\[\w*\]|_?\d+)$")

    def _error(self, line: int, column: int, reason: str) -> FormatError:
        return FormatError(self.KIND, line, column, reason)

    def parse(self, text: str) -> UnfoldingSpec:
        """Parse .ugs text into an UnfoldingSpec, keeping the vertex names."""
        d_names: List[str] = []
        f_names: List[str] = []
        edge_lines: Dict[str, List[Tuple[int, Token]]] = {"dedges:": [], "fedges:": []}
        image_lines: Dict[str, List[Tuple[int, Token, List[Token]]]] = {"eta:": [], "sigma:": []}
        seen: Set[str] = set()

        for number, line in enumerate(text.splitlines(), start=1):
            tokens = _tokenize(line)
            if not tokens:
                continue
            (column, key), values = _split_key(tokens)
            if self.PER_LEVEL.match(key.rstrip(":")):
                raise self._error(number, column, "per-level sigma sequences are not supported, use one constant sigma")
            if key not in self.SECTIONS:
                raise self._error(number, column, f"unknown section '{key.rstrip(':')}'")

            if key in ("dvertices:", "fvertices:"):
                if key in seen:
                    raise self._error(number, column, f"duplicate {key.rstrip(':')} section")
                target = d_names if key == "dvertices:" else f_names
                for col, name in values:
                    if not IDENTIFIER.match(name):
                        raise self._error(number, col, f"invalid vertex name '{name}'")
                    if name in d_names or name in f_names:
                        raise self._error(number, col, f"vertex '{name}' declared twice")
                    target.append(name)
            elif key in edge_lines:
                edge_lines[key].extend((number, token) for token in values)
            else:
                if not values or values[0][1] == "->":
                    raise self._error(number, column, f"{key.rstrip(':')} line needs a source vertex")
                source = values[0]
                rest = values[1:]
                if not rest or rest[0][1] != "->":
                    col = rest[0][0] if rest else source[0] + len(source[1])
                    raise self._error(number, col, "expected '->' after the source vertex")
                image_lines[key].append((number, source, rest[1:]))
            seen.add(key)

        if not f_names:
            raise self._error(1, 1, "fvertices section with at least one name is required")

        d_index = {name: k for k, name in enumerate(d_names)}
        f_index = {name: k for k, name in enumerate(f_names)}

        def resolve(number: int, column: int, name: str, table: Dict[str, int], what: str) -> int:
            if name not in table:
                raise self._error(number, column, f"unknown {what} vertex '{name}'")
            return table[name]

        def edges(key: str, table: Dict[str, int], what: str) -> FiniteGraph:
            pairs = set()
            for number, (column, text_) in edge_lines[key]:
                left, sep, right = text_.partition("-")
                if not sep or not left or not right:
                    raise self._error(number, column, f"edge '{text_}' must look like u-v")
                u = resolve(number, column, left, table, what)
                v = resolve(number, column + len(left) + 1, right, table, what)
                if u == v:
                    raise self._error(number, column, f"self-loop '{text_}' is not allowed")
                pairs.add((min(u, v), max(u, v)))
            return FiniteGraph(len(table), frozenset(pairs))

        def images(key: str, sources: Dict[str, int], what: str) -> List[Set[int]]:
            result: List[Set[int]] = [set() for _ in sources]
            defined: Set[int] = set()
            for number, (column, name), targets in image_lines[key]:
                source = resolve(number, column, name, sources, what)
                if source in defined:
                    raise self._error(number, column, f"{key.rstrip(':')} for '{name}' given twice")
                defined.add(source)
                for col, target in targets:
                    result[source].add(resolve(number, col, target, f_index, "F"))
            return result

        return UnfoldingSpec(
            D=edges("dedges:", d_index, "D"),
            F=edges("fedges:", f_index, "F"),
            eta=tuple(frozenset(s) for s in images("eta:", d_index, "D")),
            sigma=tuple(frozenset(s) for s in images("sigma:", f_index, "F")),
            d_names=tuple(d_names),
            f_names=tuple(f_names),
        )

    def serialize(self, spec: UnfoldingSpec) -> str:
        """Write a spec in canonical order: vertices by index, edges and images sorted."""
        d, f = spec.d_names, spec.f_names
        lines = []
        if spec.D.n:
            lines.append("dvertices: " + " ".join(d))
        lines.append("fvertices: " + " ".join(f))
        if spec.D.edges:
            lines.append("dedges: " + " ".join(f"{d[u]}-{d[v]}" for u, v in sorted(spec.D.edges)))
        if spec.F.edges:
            lines.append("fedges: " + " ".join(f"{f[u]}-{f[v]}" for u, v in sorted(spec.F.edges)))
        for k, image in enumerate(spec.eta):
            if image:
                lines.append(f"eta: {d[k]} -> " + " ".join(f[y] for y in sorted(image)))
        for x, image in enumerate(spec.sigma):
            if image:
                lines.append(f"sigma: {f[x]} -> " + " ".join(f[y] for y in sorted(image)))
        return "\n".join(lines) + "\n"


class GraphParser:
    """Main parser interface over both formats."""

    def __init__(self):
        self.automaton_parser = AutomatonParser()
        self.spec_parser = SpecParser()

    def parse_automaton(self, text: str) -> UnaryPairAutomaton:
        return self.automaton_parser.parse(text)

    def serialize_automaton(self, automaton: Union[UnaryPairAutomaton, OneLoopStandardAutomaton]) -> str:
        if isinstance(automaton, OneLoopStandardAutomaton):
            automaton = automaton.to_pair_automaton(symmetric=True)
        return self.automaton_parser.serialize(automaton)

    def parse_spec(self, text: str) -> UnfoldingSpec:
        return self.spec_parser.parse(text)

    def serialize_spec(self, spec: UnfoldingSpec) -> str:
        return self.spec_parser.serialize(spec)

    def load(self, path: Union[str, Path]) -> Union[UnaryPairAutomaton, UnfoldingSpec]:
        """Read a file, choosing the format by its extension."""
        path = Path(path)
        kind = path.suffix.lower().lstrip(".")
        if kind not in ("upa", "ugs"):
            raise ValueError(f"Unrecognized file extension '{path.suffix}', expected .upa or .ugs")
        data = path.read_bytes()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            line_start = data.rfind(b"\n", 0, e.start) + 1
            raise FormatError(kind, data.count(b"\n", 0, e.start) + 1, e.start - line_start + 1,
                              "invalid UTF-8") from e
        if kind == "upa":
            return self.parse_automaton(text)
        return self.parse_spec(text)


def parse_automaton(text: str) -> UnaryPairAutomaton:
    return AutomatonParser().parse(text)


def serialize_automaton(automaton: UnaryPairAutomaton) -> str:
    return AutomatonParser().serialize(automaton)


def parse_spec(text: str) -> UnfoldingSpec:
    return SpecParser().parse(text)


def serialize_spec(spec: UnfoldingSpec) -> str:
    return SpecParser().serialize(spec)
