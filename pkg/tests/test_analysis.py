"""
Test suite for F^sigma, oriented cycles, FiniteReach and the infinity test.
"""
import logging

import pytest
from src.formal.errors import VertexError
from src.formal.graphs import DVertex, FVertex
from src.reasoning.analysis import (
    SigmaGraph,
    build_sigma_graph,
    finite_reach,
    find_nonzero_cycle,
    has_infinite_component,
    infinity_test_details,
    is_in_infinite_component,
    oriented_cycle_nonzero,
)

from tests.conftest import make_spec


class TestSigmaGraph:
    def test_single_self_arc(self, s1):
        graph = build_sigma_graph(s1)
        assert graph.nodes == (0,)
        assert graph.arcs == frozenset({(0, 0)})

    def test_two_way(self, s3):
        graph = build_sigma_graph(s3)
        assert graph.nodes == (0, 1)
        assert graph.arcs == frozenset({(0, 1), (1, 0)})

    def test_components_collapse(self):
        spec = make_spec(["a", "b", "c"], {"c": ["a", "b"]}, f_edges=[("b", "a")])
        graph = build_sigma_graph(spec)
        assert graph.node_of == (0, 0, 2)
        assert graph.arcs == frozenset({(2, 0)})

    def test_neighbour_order(self, s3):
        graph = build_sigma_graph(s3)
        assert graph.neighbours(0) == ((1, -1), (1, 1))

    def test_arc_range_checked(self):
        with pytest.raises(VertexError):
            SigmaGraph.from_arcs(2, [(0, 2)])


class TestOrientedCycle:
    def test_self_arc(self):
        assert oriented_cycle_nonzero(SigmaGraph.from_arcs(1, [(0, 0)]))

    def test_two_cycle(self):
        witness = find_nonzero_cycle(SigmaGraph.from_arcs(2, [(0, 1), (1, 0)]))
        assert witness is not None
        assert abs(witness.net_length) == 2

    def test_triangle_with_net_one(self):
        # a->c->b against a->b: net length 1
        graph = SigmaGraph.from_arcs(3, [(0, 1), (2, 1), (0, 2)])
        assert oriented_cycle_nonzero(graph)

    def test_diamond_is_balanced(self):
        # a->b->d and a->c->d: every oriented cycle has net length 0
        graph = SigmaGraph.from_arcs(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        assert not oriented_cycle_nonzero(graph)

    def test_acyclic(self):
        assert not oriented_cycle_nonzero(SigmaGraph.from_arcs(2, [(0, 1)]))

    def test_disconnected_parts(self):
        graph = SigmaGraph.from_arcs(4, [(0, 1), (2, 3), (3, 2)])
        witness = find_nonzero_cycle(graph)
        assert witness.base == 2


class TestInfiniteComponent:
    def test_ray(self, s1):
        assert has_infinite_component(s1)

    def test_singletons(self, s2):
        assert not has_infinite_component(s2)

    def test_pairs(self, s4):
        assert not has_infinite_component(s4)

    def test_stars(self, s5):
        assert not has_infinite_component(s5)

    def test_prefix_is_ignored(self, glued):
        assert not has_infinite_component(glued)


class TestFiniteReach:
    def test_zigzag_window(self, s3):
        queue = finite_reach(s3, 0, 2, -2, 2)
        assert queue.entries == [(0, 0), (1, -1), (1, 1), (0, -2), (0, 2)]
        assert queue.pred[(0, 2)] == ((1, 1), 1)

    def test_no_arcs(self, s2):
        assert finite_reach(s2, 0, 5, -1, 1).entries == [(0, 0)]

    def test_floor_at_level_zero(self, s1):
        queue = finite_reach(s1, 0, 0, 0, 1)
        assert set(queue) == {(0, 0), (0, 1)}

    def test_path_to(self, s3):
        queue = finite_reach(s3, 0, 2, -2, 2)
        assert queue.path_to((0, 2)) == [(0, 0), (1, 1), (0, 2)]

    def test_window_must_contain_zero(self, s1):
        with pytest.raises(ValueError):
            finite_reach(s1, 0, 0, 1, 2)

    def test_unknown_vertex(self, s1):
        with pytest.raises(VertexError):
            finite_reach(s1, 3, 0, 0, 1)


class TestInfinityTest:
    def test_ray(self, s1):
        assert is_in_infinite_component(s1, FVertex(0, 0))

    def test_singleton(self, s2):
        assert not is_in_infinite_component(s2, FVertex(0, 7))

    def test_pair(self, s4):
        assert not is_in_infinite_component(s4, FVertex(0, 0))

    def test_verdict_details(self, s3):
        verdict = infinity_test_details(s3, 1, 1)
        assert verdict.window == (-1, 2)
        assert verdict.boundary == frozenset({1})
        assert verdict.infinite
        assert verdict.agrees

    def test_variants_agree_on_examples(self, s1, s2, s3, s4, s5, caplog):
        with caplog.at_level(logging.WARNING):
            for spec in (s1, s2, s3, s4, s5):
                for level in range(3 * spec.p + 1):
                    for x in range(spec.F.n):
                        assert infinity_test_details(spec, x, level).agrees
        assert not caplog.records

    def test_prefix_vertex(self, anchored_ray, glued):
        assert is_in_infinite_component(anchored_ray, DVertex(0))
        assert not is_in_infinite_component(glued, DVertex(0))

    def test_out_of_range(self, s1):
        with pytest.raises(VertexError):
            is_in_infinite_component(s1, FVertex(2, 0))


if __name__ == "__main__":
    pytest.main([__file__])
