"""
Test suite for the brute-force oracle, the generators and the self-check harness.
"""
import pytest
from src.formal.automaton import is_one_loop
from src.formal.graphs import DVertex, FVertex
from src.oracle.cycles import MAX_NODES, enumerate_oriented_cycles, has_nonzero_cycle
from src.oracle.generator import MCG64, generate_spec, ladder_spec, random_digraph, random_one_loop_automaton
from src.oracle.harness import DENSITIES, PROPERTIES, REACH_AUTOMATON_MAX_P, CheckReport, PropertyTally, run_check
from src.oracle.truncation import Oracle, TruncationIndex, oracle_has_infinite, oracle_infinite, oracle_reachable
from src.reasoning.analysis import SigmaGraph, has_infinite_component
from src.reasoning.reachability import ReachabilityIndex


class TestOracle:
    def test_zigzag(self, s3):
        oracle = Oracle(s3)
        assert oracle.reachable(FVertex(0, 0), FVertex(1, 1))
        assert not oracle.reachable(FVertex(0, 0), FVertex(0, 1))

    def test_pairs(self, s4):
        assert oracle_reachable(s4, FVertex(0, 0), FVertex(1, 1))
        assert not oracle_reachable(s4, FVertex(0, 0), FVertex(0, 1))

    def test_infinite(self, s1, s2):
        assert oracle_infinite(s1, FVertex(0, 0))
        assert not oracle_infinite(s2, FVertex(0, 3))

    def test_has_infinite(self, s1, s4):
        assert oracle_has_infinite(s1)
        assert not oracle_has_infinite(s4)

    def test_glue_below_p_is_not_pumping(self, glued):
        oracle = Oracle(glued)
        x1, x2 = FVertex(0, 1), FVertex(0, 2)
        assert oracle.reachable(x1, x2)
        assert not oracle.infinite(x1)
        assert not oracle.infinite(DVertex(0))

    def test_truncations_are_cached(self, s1):
        oracle = Oracle(s1, slack=0)
        assert oracle.at_depth(3) is oracle.at_depth(3)

    def test_slack_from_argument(self, s1):
        assert Oracle(s1, slack=5).slack == 5

    def test_bfs_matches_labelling(self, s5):
        truncation = TruncationIndex(s5, 6)
        vertices = list(s5.vertices(6))
        for u in vertices:
            for v in vertices:
                assert truncation.bfs_connected(u, v) == truncation.connected(u, v)


class TestCycleEnumeration:
    def test_self_arc(self):
        cycles = enumerate_oriented_cycles(SigmaGraph.from_arcs(1, [(0, 0)]))
        assert sorted(net for _, net in cycles) == [-1, 1]

    def test_two_cycle(self):
        cycles = enumerate_oriented_cycles(SigmaGraph.from_arcs(2, [(0, 1), (1, 0)]))
        assert sorted(cycles) == [((0, 1), -2), ((0, 1), 2)]

    def test_balanced(self):
        graph = SigmaGraph.from_arcs(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        assert enumerate_oriented_cycles(graph)
        assert not has_nonzero_cycle(graph)

    def test_acyclic(self):
        assert enumerate_oriented_cycles(SigmaGraph.from_arcs(3, [(0, 1), (1, 2)])) == []

    def test_size_limit(self):
        with pytest.raises(ValueError):
            enumerate_oriented_cycles(SigmaGraph.from_arcs(MAX_NODES + 1, []))


class TestGenerator:
    def test_stream_is_reproducible(self):
        a, b = MCG64(42), MCG64(42)
        draws = [a.uniform() for _ in range(20)]
        assert draws == [b.uniform() for _ in range(20)]
        assert all(0.0 <= d < 1.0 for d in draws)

    def test_seeds_differ(self):
        assert MCG64(1).uniform() != MCG64(2).uniform()

    def test_same_seed_same_spec(self):
        assert generate_spec(7, 4, 2, 0.3) == generate_spec(7, 4, 2, 0.3)

    def test_density_zero(self):
        spec = generate_spec(3, 5, 3, 0.0)
        assert spec.F.edges == frozenset()
        assert all(not image for image in spec.sigma)
        assert all(not image for image in spec.eta)

    def test_density_one(self):
        spec = generate_spec(3, 5, 3, 1.0)
        n = spec.F.n
        assert len(spec.F.edges) == n * (n - 1) // 2
        assert all(image == frozenset(range(n)) for image in spec.sigma)

    def test_bounds(self):
        for seed in range(30):
            spec = generate_spec(seed, 3, 2, 0.5)
            assert 1 <= spec.F.n <= 3
            assert 0 <= spec.D.n <= 2

    def test_invalid_bounds(self):
        with pytest.raises(ValueError):
            generate_spec(1, 0, 1, 0.5)

    def test_ladder(self):
        spec = ladder_spec(3)
        assert has_infinite_component(spec)
        assert ReachabilityIndex(spec).closure_table(0).period == 3

    def test_random_digraph_limits(self):
        for seed in range(20):
            graph = random_digraph(seed, max_nodes=4, max_arcs=5)
            assert 1 <= len(graph.nodes) <= 4
            assert len(graph.arcs) <= 5

    def test_random_automaton_is_one_loop(self):
        for seed in range(20):
            automaton = random_one_loop_automaton(seed)
            assert is_one_loop(automaton)
            assert len(automaton) <= 12


class TestHarness:
    def test_tally(self):
        tally = PropertyTally()
        tally.record(True, lambda: "unused")
        tally.record(False, lambda: "case 1")
        other = PropertyTally(passed=2, failed=1, examples=["case 2"])
        tally.merge(other)
        assert (tally.passed, tally.failed) == (3, 2)
        assert tally.examples == ["case 1", "case 2"]

    def test_examples_are_capped(self):
        tally = PropertyTally()
        for k in range(10):
            tally.record(False, lambda: f"case {k}")
        assert tally.failed == 10
        assert len(tally.examples) == 5

    def test_report(self):
        tallies = {name: PropertyTally(passed=1) for name in PROPERTIES}
        report = CheckReport(1, 9, tallies)
        assert report.ok
        assert report.lines()[0] == "check: 1 trials from seed 9"
        assert report.lines()[-1] == "OK"
        tallies["reachability"].record(False, lambda: "x ~ y")
        assert not report.ok
        assert report.to_dict()["properties"]["reachability"]["examples"] == ["x ~ y"]

    def test_small_run(self):
        progress = []
        report = run_check(3, seed=11, max_f=3, max_d=1, progress=progress.append)
        assert report.ok, "\n".join(report.lines())
        assert progress == [1, 2, 3]
        assert report.tallies["oriented-cycle"].passed == 12

    def test_needs_a_trial(self):
        with pytest.raises(ValueError):
            run_check(0)

    @pytest.mark.slow
    def test_workers_do_not_change_the_report(self):
        inline = run_check(6, seed=3, max_f=3, max_d=2)
        pooled = run_check(6, seed=3, max_f=3, max_d=2, workers=2)
        assert inline.to_dict() == pooled.to_dict()

    @pytest.mark.slow
    def test_full_corpus(self):
        report = run_check(500, seed=1, max_f=6, max_d=3, workers=4)
        assert report.ok, "\n".join(report.lines())

    @pytest.mark.slow
    def test_reach_automaton_corpus(self):
        # every spec has an empty prefix and p <= 4, so each one builds a reachability automaton
        specs = [generate_spec(1001 + k, 4, 0, DENSITIES[k % len(DENSITIES)]) for k in range(400)]
        assert all(not spec.D.n and spec.p <= REACH_AUTOMATON_MAX_P for spec in specs)

        report = run_check(400, seed=1001, max_f=4, max_d=0, workers=4)
        tally = report.tallies["reach-automaton"]
        assert tally.failed == 0, tally.examples
        assert tally.passed >= 400
        assert report.ok, "\n".join(report.lines())


if __name__ == "__main__":
    pytest.main([__file__])
