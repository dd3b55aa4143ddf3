"""
Self-check harness: decision procedures against the brute-force oracle.

Trial k draws one spec (seed + k, density cycling through DENSITIES),
four random digraphs and one random one-loop automaton, and checks every
property below on them. Trials are independent, so they may run in
worker processes; results are always merged in trial order.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from ..extraction.unfolding import extract_spec, synthesize_automaton
from ..formal.automaton import Symbol, dfa_equivalent
from ..formal.errors import OracleStabilityError
from ..formal.graphs import FVertex, UnfoldingSpec
from ..formal.standard import standardize_one_loop
from ..reasoning.analysis import has_infinite_component, oriented_cycle_nonzero
from ..reasoning.connectivity import is_connected, naive_connect
from ..reasoning.reach_automaton import build_reach_automaton, simulate_reach_automaton, state_bound
from ..reasoning.reachability import ReachabilityIndex, closure_laws_hold
from .cycles import has_nonzero_cycle
from .generator import generate_spec, random_digraph, random_one_loop_automaton
from .truncation import Oracle


logger = logging.getLogger(__name__)

DENSITIES = (0.1, 0.3, 0.6)
DIGRAPHS_PER_TRIAL = 4
REACH_AUTOMATON_MAX_P = 4
MAX_EXAMPLES = 5

PROPERTIES = (
    "infinite-component",
    "infinity-test",
    "reachability",
    "connectivity",
    "naive-connect",
    "oriented-cycle",
    "closure-laws",
    "reach-automaton",
    "round-trip",
    "standardize",
)


@dataclass
class PropertyTally:
    """Pass/fail counts for one property, with a few failing cases."""
    passed: int = 0
    failed: int = 0
    examples: List[str] = field(default_factory=list)

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if len(self.examples) < MAX_EXAMPLES:
            self.examples.append(describe())

    def merge(self, other: "PropertyTally") -> None:
        self.passed += other.passed
        self.failed += other.failed
        self.examples.extend(other.examples[:MAX_EXAMPLES - len(self.examples)])


@dataclass
class CheckReport:
    """Aggregated outcome of a check run."""
    trials: int
    seed: int
    tallies: Dict[str, PropertyTally]
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())

    def lines(self) -> List[str]:
        out = [f"check: {self.trials} trials from seed {self.seed}"]
        for name in PROPERTIES:
            tally = self.tallies[name]
            out.append(f"{name}: {tally.passed} passed, {tally.failed} failed")
            out.extend(f"  {example}" for example in tally.examples)
        out.append("OK" if self.ok else "FAILED")
        return out

    def to_dict(self) -> Dict[str, object]:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
            "properties": {
                name: {"passed": t.passed, "failed": t.failed, "examples": t.examples}
                for name, t in self.tallies.items()
            },
        }


def _spec_label(seed: int, density: float, spec: UnfoldingSpec) -> str:
    return f"seed={seed} density={density} D.n={spec.D.n} F.n={spec.F.n}"


def check_spec(spec: UnfoldingSpec, tallies: Dict[str, PropertyTally], label: str = "") -> None:
    """Check every spec-level property of one spec, recording into tallies."""
    p = spec.p
    oracle = Oracle(spec)
    index = ReachabilityIndex(spec).precompute()
    window = list(spec.vertices(3 * p))

    has_infinite = oracle.has_infinite()
    main = has_infinite_component(spec)
    tallies["infinite-component"].record(main == has_infinite, lambda: f"{label}: main={main} oracle={has_infinite}")

    for v in window:
        got, want = index.is_infinite(v), oracle.infinite(v)
        tallies["infinity-test"].record(got == want, lambda: f"{label}: {spec.vertex_name(v)} main={got} oracle={want}")

    all_connected = True
    for k, u in enumerate(window):
        for v in window[k:]:
            got, want = index.reachable(u, v), oracle.reachable(u, v)
            all_connected = all_connected and want
            tallies["reachability"].record(
                got == want,
                lambda: f"{label}: {spec.vertex_name(u)} ~ {spec.vertex_name(v)} main={got} oracle={want}")

    connected = is_connected(spec)
    expected = has_infinite and all_connected
    tallies["connectivity"].record(connected == expected, lambda: f"{label}: main={connected} oracle={expected}")

    for base in index.infinite_bases():
        tallies["closure-laws"].record(closure_laws_hold(index, base), lambda: f"{label}: base {spec.f_names[base]}")

    padded = spec.padded_to(p)
    round_trip = extract_spec(synthesize_automaton(spec))
    tallies["round-trip"].record(round_trip == padded, lambda: f"{label}: extract(synthesize(S)) differs from S")

    if spec.D.n:
        return
    naive = naive_connect(spec)
    tallies["naive-connect"].record(naive == connected, lambda: f"{label}: naive={naive} main={connected}")
    if p > REACH_AUTOMATON_MAX_P:
        return
    automaton = build_reach_automaton(spec, index)
    within = len(automaton) <= state_bound(p)
    tallies["reach-automaton"].record(within, lambda: f"{label}: {len(automaton)} states above bound")
    copies = [v for v in window if isinstance(v, FVertex)]
    for k, u in enumerate(copies):
        for v in copies[k:]:
            got, want = simulate_reach_automaton(automaton, u, v, p), index.reachable(u, v)
            tallies["reach-automaton"].record(
                got == want,
                lambda: f"{label}: {spec.vertex_name(u)} ~ {spec.vertex_name(v)} automaton={got} main={want}")


def run_trial(trial: int, seed: int, max_f: int, max_d: int) -> Dict[str, PropertyTally]:
    """Everything checked for one trial index."""
    tallies = {name: PropertyTally() for name in PROPERTIES}
    trial_seed = seed + trial
    density = DENSITIES[trial % len(DENSITIES)]
    spec = generate_spec(trial_seed, max_f, max_d, density)
    label = _spec_label(trial_seed, density, spec)
    try:
        check_spec(spec, tallies, label)
    except OracleStabilityError as e:
        tallies["reachability"].record(False, lambda: f"{label}: {e}")

    for k in range(DIGRAPHS_PER_TRIAL):
        graph_seed = trial_seed * DIGRAPHS_PER_TRIAL + k
        graph = random_digraph(graph_seed)
        got, want = oriented_cycle_nonzero(graph), has_nonzero_cycle(graph)
        tallies["oriented-cycle"].record(
            got == want, lambda: f"digraph seed={graph_seed} arcs={sorted(graph.arcs)} main={got} enumeration={want}")

    automaton = random_one_loop_automaton(trial_seed)
    standard = standardize_one_loop(automaton)
    mirrored = any(symbol == Symbol.LEFT for _, symbol in automaton.transitions)
    equivalent = dfa_equivalent(automaton, standard.to_pair_automaton(symmetric=mirrored))
    tallies["standardize"].record(
        equivalent and standard.p <= len(automaton),
        lambda: f"automaton seed={trial_seed}: equivalent={equivalent} p={standard.p} states={len(automaton)}")
    return tallies


def _run_trial_args(args: Tuple[int, int, int, int]) -> Dict[str, PropertyTally]:
    return run_trial(*args)


def run_check(trials: int,
              seed: int = 1,
              max_f: int = 6,
              max_d: int = 3,
              workers: int = 1,
              progress: Optional[Callable[[int], None]] = None) -> CheckReport:
    """
    Run `trials` independent trials and merge their tallies in trial order.

    Args:
        trials: number of trials
        seed: first seed; trial k uses seed + k
        max_f: largest block size of generated specs
        max_d: largest prefix size of generated specs
        workers: worker processes (1 runs inline)
        progress: called with the number of finished trials

    Returns:
        CheckReport with per-property counts
    """
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    start = time.perf_counter()
    merged = {name: PropertyTally() for name in PROPERTIES}
    jobs = [(k, seed, max_f, max_d) for k in range(trials)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_run_trial_args, jobs, chunksize=max(1, trials // (4 * workers)))
            for done, tallies in enumerate(results, start=1):
                _merge(merged, tallies, done, progress)
    else:
        for done, job in enumerate(jobs, start=1):
            _merge(merged, _run_trial_args(job), done, progress)

    report = CheckReport(trials, seed, merged, time.perf_counter() - start)
    logger.info("Check finished in %.2fs: %s", report.elapsed, "ok" if report.ok else "disagreements found")
    return report


def _merge(merged: Dict[str, PropertyTally],
           tallies: Dict[str, PropertyTally],
           done: int,
           progress: Optional[Callable[[int], None]]) -> None:
    for name, tally in tallies.items():
        merged[name].merge(tally)
    if progress:
        progress(done)

