"""
uag: decision procedures for unary automatic graphs of finite degree.

System integration module: loads inputs, runs the decision procedures
and wraps every answer in a QueryResult.
"""
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, Literal, Optional, Union

from pydantic import BaseModel, Field

from .config import get_settings
from .extraction.unfolding import extract_spec, synthesize_automaton
from .formal.automaton import UnaryPairAutomaton
from .formal.graphs import DVertex, FVertex, UnfoldingSpec, Vertex
from .formal.parser import GraphParser
from .formal.standard import OneLoopStandardAutomaton, standardize_one_loop
from .oracle.harness import CheckReport, run_check
from .oracle.truncation import Oracle
from .reasoning.analysis import build_sigma_graph, find_nonzero_cycle, infinity_test_details
from .reasoning.connectivity import is_connected, naive_connect
from .reasoning.reach_automaton import build_reach_automaton
from .reasoning.reachability import ReachabilityIndex


LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class QueryResult(BaseModel):
    """Answer of one decision query."""
    answer: Literal["YES", "NO"]
    algorithm: str
    p: int
    elapsed: float = 0.0
    detail: Dict[str, Any] = Field(default_factory=dict)

    @property
    def decision(self) -> bool:
        return self.answer == "YES"

    def to_json(self) -> str:
        """JSON without the timing, so equal queries print equal output."""
        return self.model_dump_json(exclude={"elapsed"})


def _answer(value: bool) -> Literal["YES", "NO"]:
    return "YES" if value else "NO"


class UnaryGraphSystem:
    """Main system: inputs in, QueryResults out."""

    def __init__(self, enable_logging: bool = True, log_level: Optional[str] = None):
        """
        Args:
            enable_logging: configure the root logger
            log_level: overrides UAG_LOG_LEVEL
        """
        self.settings = get_settings()
        self.parser = GraphParser()
        if enable_logging:
            logging.basicConfig(level=log_level or self.settings.log_level, format=LOG_FORMAT)
        self.logger = logging.getLogger(__name__)
        self.stats = {"queries_run": 0, "yes_answers": 0, "total_query_time": 0.0}

    def load(self, path: Union[str, Path]) -> Union[UnaryPairAutomaton, UnfoldingSpec]:
        return self.parser.load(path)

    def load_spec(self, path: Union[str, Path]) -> UnfoldingSpec:
        """Read a .ugs spec, or a .upa automaton that is standardized and extracted."""
        loaded = self.load(path)
        if isinstance(loaded, UnfoldingSpec):
            return loaded
        self.logger.info("Standardizing %d-state automaton from %s", len(loaded), path)
        return extract_spec(standardize_one_loop(loaded))

    def _run(self, algorithm: str, spec: UnfoldingSpec, query: Callable[[], Any],
             detail: Optional[Callable[[Any], Dict[str, Any]]] = None) -> QueryResult:
        start = time.perf_counter()
        outcome = query()
        decision = outcome if isinstance(outcome, bool) else bool(outcome[0])
        elapsed = time.perf_counter() - start
        result = QueryResult(
            answer=_answer(decision),
            algorithm=algorithm,
            p=spec.p,
            elapsed=elapsed,
            detail=detail(outcome) if detail else {},
        )
        self.stats["queries_run"] += 1
        self.stats["yes_answers"] += int(decision)
        self.stats["total_query_time"] += elapsed
        self.logger.info("%s on p=%d: %s in %.4fs", algorithm, spec.p, result.answer, elapsed)
        return result

    def infinite_component(self, spec: UnfoldingSpec) -> QueryResult:
        def query():
            witness = find_nonzero_cycle(build_sigma_graph(spec))
            return witness is not None, witness

        def detail(outcome):
            witness = outcome[1]
            if witness is None:
                return {}
            return {"cycle_node": spec.f_names[witness.node], "net_length": witness.net_length}

        return self._run("oriented-cycle", spec, query, detail)

    def infinity_test(self, spec: UnfoldingSpec, vertex: Vertex) -> QueryResult:
        spec.check_vertex(vertex)
        if isinstance(vertex, DVertex) or spec.D.n:
            return self._run("infinity-test", spec, lambda: ReachabilityIndex(spec).is_infinite(vertex),
                             lambda _: {"vertex": spec.vertex_name(vertex)})

        def query():
            verdict = infinity_test_details(spec, vertex.x, vertex.level)
            return verdict.infinite, verdict

        def detail(outcome):
            verdict = outcome[1]
            return {
                "vertex": spec.vertex_name(vertex),
                "window": list(verdict.window),
                "boundary": sorted(spec.f_names[y] for y in verdict.boundary),
                "outgoing_arc_variant": verdict.by_outgoing_arc,
            }

        return self._run("infinity-test", spec, query, detail)

    def reach(self, spec: UnfoldingSpec, u: Vertex, v: Vertex) -> QueryResult:
        index = ReachabilityIndex(spec)

        def detail(_):
            info: Dict[str, Any] = {"from": spec.vertex_name(u), "to": spec.vertex_name(v)}
            if isinstance(u, FVertex) and index.sigma_infinite(u.x, u.level):
                info["closure_table"] = index.closure_table(u.x).summary(spec.f_names)
            return info

        return self._run("reach", spec, lambda: index.reachable(u, v), detail)

    def connected(self, spec: UnfoldingSpec, naive: bool = False) -> QueryResult:
        if naive:
            return self._run("naive-connect", spec, lambda: naive_connect(spec))
        return self._run("connectivity", spec, lambda: is_connected(spec))

    def oracle_reach(self, spec: UnfoldingSpec, u: Vertex, v: Vertex) -> QueryResult:
        oracle = Oracle(spec, self.settings.oracle_slack)
        return self._run("oracle-reach", spec, lambda: oracle.reachable(u, v),
                         lambda _: {"from": spec.vertex_name(u), "to": spec.vertex_name(v)})

    def oracle_infinite(self, spec: UnfoldingSpec, vertex: Vertex) -> QueryResult:
        oracle = Oracle(spec, self.settings.oracle_slack)
        return self._run("oracle-infinite", spec, lambda: oracle.infinite(vertex),
                         lambda _: {"vertex": spec.vertex_name(vertex)})

    def reach_automaton(self, spec: UnfoldingSpec) -> UnaryPairAutomaton:
        start = time.perf_counter()
        automaton = build_reach_automaton(spec)
        self.logger.info("Built reachability automaton with %d states in %.4fs",
                         len(automaton), time.perf_counter() - start)
        return automaton

    def standardize(self, automaton: UnaryPairAutomaton) -> OneLoopStandardAutomaton:
        return standardize_one_loop(automaton)

    def synthesize(self, spec: UnfoldingSpec) -> OneLoopStandardAutomaton:
        return synthesize_automaton(spec)

    def extract(self, automaton: UnaryPairAutomaton) -> UnfoldingSpec:
        return extract_spec(standardize_one_loop(automaton))

    def check(self, trials: Optional[int] = None, seed: Optional[int] = None,
              max_f: Optional[int] = None, max_d: Optional[int] = None,
              workers: Optional[int] = None) -> CheckReport:
        s = self.settings
        return run_check(
            trials=trials or s.check_trials,
            seed=s.check_seed if seed is None else seed,
            max_f=max_f or s.check_max_f,
            max_d=s.check_max_d if max_d is None else max_d,
            workers=workers or s.check_workers,
        )

    def get_system_statistics(self) -> Dict[str, Any]:
        stats = dict(self.stats)
        queries = stats["queries_run"]
        stats["average_query_time"] = stats["total_query_time"] / queries if queries else 0.0
        return stats

    def reset_statistics(self):
        for key in self.stats:
            self.stats[key] = 0.0 if key == "total_query_time" else 0
