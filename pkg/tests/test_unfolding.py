"""
Test suite for spec extraction, synthesis, truncation and vertex encodings.
"""
import pytest
from src.extraction.unfolding import (
    Encoding,
    decode_vertex,
    encode_vertex,
    extract_spec,
    synthesize_automaton,
    truncate,
)
from src.formal.automaton import dfa_equivalent
from src.formal.errors import VertexError
from src.formal.graphs import DVertex, FiniteGraph, FVertex, UnfoldingSpec
from src.formal.standard import OneLoopStandardAutomaton, standardize_one_loop

from tests.conftest import make_spec


class TestExtraction:
    def test_ray_automaton(self):
        spec = extract_spec(OneLoopStandardAutomaton(1, loop_finals=frozenset({(0, 1)})))
        assert spec.F == FiniteGraph(1)
        assert spec.sigma == (frozenset({0}),)
        assert spec.D == FiniteGraph(1)
        assert spec.eta == (frozenset(),)

    def test_empty_relation(self):
        spec = extract_spec(OneLoopStandardAutomaton(1))
        assert spec.sigma == (frozenset(),)
        assert spec.F.edges == frozenset()

    def test_edges_and_images(self):
        # tail: q0-q1 edge, q1 -> f0 attachment; loop: f0-f1 edge, f1 -> f0 successor
        standard = OneLoopStandardAutomaton(2, frozenset({(0, 1), (1, 1)}), frozenset({(0, 1), (1, 1)}))
        spec = extract_spec(standard)
        assert spec.D.edges == frozenset({(0, 1)})
        assert spec.eta == (frozenset(), frozenset({0}))
        assert spec.F.edges == frozenset({(0, 1)})
        assert spec.sigma == (frozenset(), frozenset({0}))

    def test_default_names(self):
        spec = extract_spec(OneLoopStandardAutomaton(2))
        assert spec.d_names == ("d0", "d1")
        assert spec.f_names == ("f0", "f1")


class TestSynthesis:
    def test_ray(self, s1):
        standard = synthesize_automaton(s1)
        assert standard == OneLoopStandardAutomaton(1, loop_finals=frozenset({(0, 1)}))

    def test_padding(self):
        spec = make_spec(["a"], {"a": ["a"]}, d_names=["d", "e"], d_edges=[("d", "e")])
        standard = synthesize_automaton(spec)
        assert standard.p == 2
        padded = extract_spec(standard)
        assert padded.F.n == 2
        assert padded.f_names[0] == "a"

    def test_round_trip(self, s3, s5, glued):
        for spec in (s3, s5, glued):
            assert extract_spec(synthesize_automaton(spec)) == spec.padded_to(spec.p)

    def test_synthesized_automaton_standardizes_back(self, glued):
        standard = synthesize_automaton(glued)
        automaton = standard.to_pair_automaton()
        again = standardize_one_loop(automaton)
        assert again == standard
        assert dfa_equivalent(automaton, again.to_pair_automaton())

    def test_relation_matches_spec(self, s4):
        standard = synthesize_automaton(s4)
        p = standard.p
        # vertex x^i sits at p + i*p + x
        assert standard.accepts_pair(p + 0, p + p + 1)
        assert not standard.accepts_pair(p + 1, p + p + 0)


class TestTruncation:
    def test_ray(self, s1):
        truncation = truncate(s1, 2)
        assert truncation.graph == FiniteGraph(3, frozenset({(0, 1), (1, 2)}))

    def test_isolated(self, s2):
        truncation = truncate(s2, 5)
        assert truncation.graph.n == 6
        assert truncation.graph.edges == frozenset()

    def test_zigzag(self, s3):
        truncation = truncate(s3, 2)
        at = truncation.index_of
        expected = {
            (at(FVertex(0, 0)), at(FVertex(1, 1))),
            (at(FVertex(1, 0)), at(FVertex(0, 1))),
            (at(FVertex(0, 1)), at(FVertex(1, 2))),
            (at(FVertex(1, 1)), at(FVertex(0, 2))),
        }
        assert truncation.graph.edges == frozenset((min(e), max(e)) for e in expected)

    def test_prefix_edges(self, anchored_ray):
        truncation = truncate(anchored_ray, 1)
        assert (0, truncation.index_of(FVertex(0, 0))) in truncation.graph.edges

    def test_monotone(self, glued):
        small, large = truncate(glued, 3), truncate(glued, 4)
        assert small.graph.edges <= large.graph.edges

    def test_bounded_degree(self, s5):
        truncation = truncate(s5, 6)
        bound = s5.D.n + 3 * s5.F.n
        assert all(len(truncation.graph.neighbours(u)) <= bound for u in range(truncation.graph.n))

    def test_vertex_index_round_trip(self, glued):
        truncation = truncate(glued, 2)
        for index in range(truncation.graph.n):
            assert truncation.index_of(truncation.vertex_at(index)) == index

    def test_level_beyond_depth(self, s1):
        with pytest.raises(VertexError):
            truncate(s1, 2).index_of(FVertex(0, 3))


class TestEncoding:
    def test_pure_sigma(self):
        assert encode_vertex(FVertex(1, 3), 2, Encoding.PURE_SIGMA) == 7

    def test_with_prefix(self):
        assert encode_vertex(DVertex(1), 3) == 1
        assert encode_vertex(FVertex(0, 0), 3) == 3

    def test_inverse(self):
        for p in range(1, 6):
            for level in range(11):
                for x in range(p):
                    v = FVertex(x, level)
                    for encoding in Encoding:
                        assert decode_vertex(encode_vertex(v, p, encoding), p, encoding) == v
            for d in range(p):
                assert decode_vertex(encode_vertex(DVertex(d), p), p) == DVertex(d)

    def test_out_of_range(self):
        with pytest.raises(VertexError):
            encode_vertex(FVertex(3, 0), 3)
        with pytest.raises(VertexError):
            encode_vertex(DVertex(0), 3, Encoding.PURE_SIGMA)


class TestSpecValidation:
    def test_names_must_be_unique(self):
        with pytest.raises(ValueError):
            UnfoldingSpec(FiniteGraph(1), FiniteGraph(1), d_names=("a",), f_names=("a",))

    def test_parse_vertex(self, anchored_ray):
        assert anchored_ray.parse_vertex("a@3") == FVertex(0, 3)
        assert anchored_ray.parse_vertex("d") == DVertex(0)
        with pytest.raises(VertexError):
            anchored_ray.parse_vertex("a")
        with pytest.raises(VertexError):
            anchored_ray.parse_vertex("z@1")

    def test_working_constant(self):
        spec = make_spec(["a"], {}, d_names=["d", "e", "f"])
        assert spec.p == 3


if __name__ == "__main__":
    pytest.main([__file__])
