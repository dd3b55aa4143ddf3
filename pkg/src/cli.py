"""
The `uag` command.

Decision subcommands print YES or NO on the first line (or a QueryResult
as JSON with --json). Exit status is 0 when the command completed, 2 on
usage problems and 3 on malformed input; with --status decision
subcommands exit 0 for YES and 1 for NO instead.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from .formal.automaton import Symbol, UnaryPairAutomaton
from .formal.errors import AutomatonShapeError, DomainError, FormatError, VertexError
from .formal.graphs import UnfoldingSpec
from .uag import QueryResult, UnaryGraphSystem


EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3


def _global_flags(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--json", action="store_true", default=default, help="print results as JSON")
    parser.add_argument("--status", action="store_true", default=default,
                        help="exit 0 for YES and 1 for NO")
    parser.add_argument("--quiet", action="store_true", default=default, help="only log errors")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uag",
        description="Decision procedures for unary automatic graphs of finite degree.",
    )
    _global_flags(parser, False)
    # Subcommands accept the global flags too, without clobbering them when absent.
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[common], help=help_text)

    sub = command("extract", "standardize a .upa automaton and print its unfolding spec")
    sub.add_argument("file", type=Path)

    sub = command("synthesize", "print the standard automaton of a .ugs spec")
    sub.add_argument("file", type=Path)

    sub = command("standardize", "print the standard one-loop form of a .upa automaton")
    sub.add_argument("file", type=Path)

    sub = command("infinite-component", "does the graph have an infinite component")
    sub.add_argument("file", type=Path)

    sub = command("infinity-test", "is a vertex in an infinite component")
    sub.add_argument("file", type=Path)
    sub.add_argument("--vertex", required=True, help="name@level or a prefix vertex name")

    sub = command("reach", "are two vertices in the same component")
    sub.add_argument("file", type=Path)
    sub.add_argument("--from", dest="source", required=True)
    sub.add_argument("--to", dest="target", required=True)

    sub = command("connected", "is the graph connected")
    sub.add_argument("file", type=Path)
    sub.add_argument("--naive", action="store_true", help="decide through the reachability automaton")

    sub = command("build-reach-automaton", "print the reachability automaton of a spec")
    sub.add_argument("file", type=Path)
    sub.add_argument("-o", "--output", type=Path, help="write to this file instead of stdout")

    sub = command("check", "compare every decision procedure with the brute-force oracle")
    sub.add_argument("--trials", type=int)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--max-f", type=int)
    sub.add_argument("--max-d", type=int)
    sub.add_argument("--workers", type=int)

    oracle = command("oracle", "answer a query by brute force on truncations")
    queries = oracle.add_subparsers(dest="query", required=True, metavar="QUERY")
    sub = queries.add_parser("reach", parents=[common], help="reachability by search")
    sub.add_argument("file", type=Path)
    sub.add_argument("--from", dest="source", required=True)
    sub.add_argument("--to", dest="target", required=True)
    sub = queries.add_parser("infinite", parents=[common], help="infinite component by pumping witness")
    sub.add_argument("file", type=Path)
    sub.add_argument("--vertex", required=True)
    return parser


def _load_automaton(system: UnaryGraphSystem, path: Path) -> UnaryPairAutomaton:
    loaded = system.load(path)
    if not isinstance(loaded, UnaryPairAutomaton):
        raise DomainError(f"{path} is a spec; this command expects a .upa automaton")
    return loaded


def _load_spec(system: UnaryGraphSystem, path: Path) -> UnfoldingSpec:
    return system.load_spec(path)


def _decide(args: argparse.Namespace, system: UnaryGraphSystem) -> QueryResult:
    spec = _load_spec(system, args.file)
    if args.command == "infinite-component":
        return system.infinite_component(spec)
    if args.command == "infinity-test":
        return system.infinity_test(spec, spec.parse_vertex(args.vertex))
    if args.command == "reach":
        return system.reach(spec, spec.parse_vertex(args.source), spec.parse_vertex(args.target))
    if args.command == "connected":
        return system.connected(spec, naive=args.naive)
    if args.query == "reach":
        return system.oracle_reach(spec, spec.parse_vertex(args.source), spec.parse_vertex(args.target))
    return system.oracle_infinite(spec, spec.parse_vertex(args.vertex))


def _print_result(result: QueryResult, as_json: bool) -> None:
    print(result.to_json() if as_json else result.answer)


def _extract(args: argparse.Namespace, system: UnaryGraphSystem) -> int:
    spec = system.extract(_load_automaton(system, args.file))
    sys.stdout.write(system.parser.serialize_spec(spec))
    return EXIT_OK


def _synthesize(args: argparse.Namespace, system: UnaryGraphSystem) -> int:
    standard = system.synthesize(_load_spec(system, args.file))
    sys.stdout.write(system.parser.serialize_automaton(standard))
    return EXIT_OK


def _standardize(args: argparse.Namespace, system: UnaryGraphSystem) -> int:
    automaton = _load_automaton(system, args.file)
    mirrored = any(symbol == Symbol.LEFT for _, symbol in automaton.transitions)
    standard = system.standardize(automaton)
    sys.stdout.write(system.parser.serialize_automaton(standard.to_pair_automaton(symmetric=mirrored)))
    return EXIT_OK


def _build_reach_automaton(args: argparse.Namespace, system: UnaryGraphSystem) -> int:
    automaton = system.reach_automaton(_load_spec(system, args.file))
    text = system.parser.serialize_automaton(automaton)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _check(args: argparse.Namespace, system: UnaryGraphSystem) -> int:
    report = system.check(args.trials, args.seed, args.max_f, args.max_d, args.workers)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_NO


HANDLERS: Dict[str, Callable[[argparse.Namespace, UnaryGraphSystem], int]] = {
    "extract": _extract,
    "synthesize": _synthesize,
    "standardize": _standardize,
    "build-reach-automaton": _build_reach_automaton,
    "check": _check,
}


def _fail(message: str, code: int) -> int:
    print(f"uag: error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        system = UnaryGraphSystem(log_level="ERROR" if args.quiet else None)
        handler = HANDLERS.get(args.command)
        if handler:
            return handler(args, system)
        result = _decide(args, system)
        _print_result(result, args.json)
        if args.status:
            return EXIT_OK if result.decision else EXIT_NO
        return EXIT_OK
    except (FormatError, AutomatonShapeError) as e:
        return _fail(str(e), EXIT_FORMAT)
    except (VertexError, DomainError, ValidationError, ValueError, OSError) as e:
        return _fail(str(e), EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
