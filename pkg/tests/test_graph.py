from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpgraph.errors import CapacityError, IdentifierError, PreconditionError, SchemaError
from cpgraph.graph import (
    Graph,
    Path,
    augment_relative,
    augmentation,
    closed_path,
    count_paths,
    count_simple_closed_paths,
    cycles_without_exit,
    enumerate_hereditary_saturated,
    every_cycle_has_exit,
    has_closed_path,
    hereditary_closure,
    hereditary_saturated_closure,
    is_hereditary_saturated,
    paths_from,
    paths_into,
    quotient_graph,
    regular_vertices,
    simple_closed_paths_at,
)
from cpgraph.zoo import empty, fork, line3, loop, loop_tail, point, rose2, vw

from conftest import graphs
from oracles import (
    closed_paths_brute,
    count_paths_brute,
    cycles_without_exit_brute,
    hs_sets_brute,
    paths_into_brute,
    rotation_class,
)


# construction and serialization


def test_duplicate_vertex_rejected():
    with pytest.raises(SchemaError):
        Graph.from_dict({"vertices": ["v", "v"], "edges": []})


def test_edge_with_unknown_endpoint_reports_pointer():
    with pytest.raises(SchemaError) as info:
        Graph.from_dict({"vertices": ["v"], "edges": [{"id": "e", "src": "x", "dst": "v"}]})
    assert info.value.pointer == "/edges/0/src"


def test_scalar_like_identifier_rejected():
    with pytest.raises(SchemaError):
        Graph.from_dict({"vertices": ["12"], "edges": []})


@given(graphs())
def test_dict_round_trip(g):
    assert Graph.from_dict(g.to_dict()) == g


def test_unknown_vertex_lookup():
    with pytest.raises(IdentifierError):
        loop().out_edges("nope")


# paths


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=3, max_edges=5), st.integers(0, 3))
def test_count_paths_matches_enumeration(g, n):
    for v in g.vertices:
        assert count_paths(g, v, n) == count_paths_brute(g, v, n)
        assert len(list(paths_from(g, v, n))) == count_paths(g, v, n)


def test_rose_path_counts():
    assert [count_paths(rose2(), "v", n) for n in range(5)] == [1, 2, 4, 8, 16]


def test_paths_from_is_lexicographic():
    got = [p.edges for p in paths_from(rose2(), "v", 2)]
    assert got == [("e", "e"), ("e", "f"), ("f", "e"), ("f", "f")]


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=3, max_edges=4))
def test_paths_into_bounded(g):
    for w in g.vertices:
        assert len(paths_into(g, w, 3)) == paths_into_brute(g, w, 3)


def test_path_of_rejects_non_composable():
    with pytest.raises(PreconditionError):
        Path.of(line3(), ["e2", "e1"])


@given(graphs())
def test_has_closed_path_matches_bounded_search(g):
    brute = any(True for _ in closed_paths_brute(g, len(g.vertices)))
    assert has_closed_path(g) == brute


# closed paths


def test_closed_path_exit_flags():
    assert not closed_path(loop(), ["e"]).has_exit
    assert closed_path(loop_tail(), ["e"]).has_exit
    assert closed_path(rose2(), ["e", "f"]).has_exit
    assert not closed_path(rose2(), ["e", "f"]).simple
    assert closed_path(loop(), ["e"]).simple


def test_simple_closed_path_definition():
    # base not revisited; a detour through another loop is still simple
    g = Graph(["v", "w"], [("a", "v", "w"), ("b", "w", "v"), ("c", "w", "w")])
    got = {cp.edges for cp in simple_closed_paths_at(g, "v", max_length=4)}
    assert got == {("a", "b"), ("a", "c", "b"), ("a", "c", "c", "b")}
    assert count_simple_closed_paths(g, "v") == 2
    assert count_simple_closed_paths(loop(), "v") == 1
    assert count_simple_closed_paths(vw(), "v") == 0


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=3, max_edges=5))
def test_count_simple_closed_paths_matches_enumeration(g):
    for v in g.vertices:
        # brute: closed paths at v that do not pass through v in the interior, long enough to expose a second one
        found = 0
        for seq in closed_paths_brute(g, 2 * len(g.vertices)):
            if g.s(seq[0]) == v and all(g.s(e) != v for e in seq[1:]):
                found += 1
        assert count_simple_closed_paths(g, v) == min(found, 2)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_cycles_without_exit_matches_enumeration(g):
    got = {rotation_class(c.edges) for c in cycles_without_exit(g)}
    assert got == cycles_without_exit_brute(g)
    assert every_cycle_has_exit(g) == (not got)


def test_cycles_without_exit_examples():
    assert [c.edges for c in cycles_without_exit(loop())] == [("e",)]
    assert cycles_without_exit(rose2()) == []
    assert cycles_without_exit(loop_tail()) == []


# hereditary saturated sets


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_enumeration_matches_exhaustive_search(g):
    assert set(enumerate_hereditary_saturated(g, cap=64)) == hs_sets_brute(g)


def test_fork_enumeration():
    got = enumerate_hereditary_saturated(fork())
    assert got == [frozenset(), frozenset({"w"}), frozenset({"u"}), frozenset({"v", "w", "u"})]


def test_enumeration_cap():
    g = Graph([f"v{i}" for i in range(6)], [])
    with pytest.raises(CapacityError):
        enumerate_hereditary_saturated(g, cap=5)
    assert len(enumerate_hereditary_saturated(g, cap=6)) == 64


def test_loop_and_line_enumeration():
    assert enumerate_hereditary_saturated(loop()) == [frozenset(), frozenset({"v"})]
    assert enumerate_hereditary_saturated(line3()) == [frozenset(), frozenset({"v1", "v2", "v3"})]


@st.composite
def graph_and_sets(draw):
    g = draw(graphs())
    a = draw(st.frozensets(st.sampled_from(g.vertices)))
    b = draw(st.frozensets(st.sampled_from(g.vertices)))
    return g, a, b


@given(graph_and_sets())
def test_closure_is_a_closure_operator(data):
    g, a, b = data
    ca = hereditary_saturated_closure(g, a)
    assert a <= ca
    assert hereditary_saturated_closure(g, ca) == ca
    assert is_hereditary_saturated(g, ca)
    assert ca <= hereditary_saturated_closure(g, a | b)
    assert hereditary_closure(g, a) <= ca


@given(graph_and_sets())
def test_closure_is_least(data):
    g, a, _ = data
    ca = hereditary_saturated_closure(g, a)
    for h in hs_sets_brute(g):
        if a <= h:
            assert ca <= h


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_quotient_graph_sets_correspond(g):
    # hereditary saturated sets of E/H are exactly {K \ H : K hs, K >= H}
    sets = hs_sets_brute(g)
    for h in sets:
        q = quotient_graph(g, h)
        assert set(q.vertices) == set(g.vertices) - h
        lifted = {k - h for k in sets if h <= k}
        assert hs_sets_brute(q) == lifted


def test_quotient_needs_hereditary_saturated():
    with pytest.raises(PreconditionError):
        quotient_graph(fork(), {"w", "u"})


# relative augmentation


def test_augment_loop_no_relations():
    a = augment_relative(loop(), set())
    assert a.vertices == ("v", "v'")
    assert a.edge_triples() == [("e", "v", "v"), ("e'", "v", "v'")]


def test_augment_full_relations_is_identity():
    for g in (loop(), rose2(), line3(), fork(), vw(), loop_tail(), point(), empty()):
        assert augment_relative(g, regular_vertices(g)) == g


def test_augment_vw_no_relations():
    a = augmentation(vw(), set())
    assert a.sink_of == {"v": "v'"}
    assert a.graph.edge_triples() == [("e", "v", "w")]
    assert a.graph.vertices == ("v", "w", "v'")


@given(graphs(), st.data())
def test_augmented_graph_shape(g, data):
    reg = regular_vertices(g)
    x = data.draw(st.frozensets(st.sampled_from(sorted(reg)))) if reg else frozenset()
    a = augment_relative(g, x)
    missing = reg - x
    assert len(a.vertices) == len(g.vertices) + len(missing)
    assert len(a.edges) == len(g.edges) + sum(len(g.in_edges(v)) for v in missing)
    assert regular_vertices(a) == reg
