from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpgraph.errors import PreconditionError
from cpgraph.graph import augment_relative, count_paths, every_cycle_has_exit, paths_from, regular_vertices
from cpgraph.structure import (
    analyze,
    condition_K,
    condition_K_via_quotients,
    condition_L,
    is_super_maximal,
    j_bracket,
    j_infinity,
)
from cpgraph.zoo import empty, fork, line3, loop, loop_tail, point, rose2, vw

from conftest import graphs


@st.composite
def graph_with_relations(draw, **kw):
    g = draw(graphs(**kw))
    reg = sorted(regular_vertices(g))
    x = draw(st.frozensets(st.sampled_from(reg))) if reg else frozenset()
    return g, x


# worked examples


def test_rose2_is_simple():
    d = analyze(rose2(), {"v"}).to_dict()
    assert d["simple"] == {"verdict": True, "reason": ""}
    assert d["conditionL"] == {"verdict": True, "witness": None}
    assert d["conditionK"] == {"verdict": True, "witness": None}
    assert d["ckUniqueness"] == {"verdict": True}
    assert d["gradedIdeals"] == [[], ["v"]]


def test_loop_is_not_simple():
    d = analyze(loop(), {"v"}).to_dict()
    assert d["simple"]["verdict"] is False
    assert d["conditionL"] == {"verdict": False, "witness": ["e"]}
    assert d["simple"]["reason"] == "condition (L) fails; witness cycle: e"
    assert d["superMaximal"]["verdict"] is True
    assert d["allIdealsGraded"] is False
    assert d["conditionK"]["witness"] == "v"


def test_line3_is_simple():
    d = analyze(line3(), {"v1", "v2"}).to_dict()
    assert d["simple"]["verdict"] is True
    assert d["jInfinity"] == []


def test_fork_is_not_super_maximal():
    d = analyze(fork(), {"v"}).to_dict()
    assert d["simple"]["verdict"] is False
    assert d["superMaximal"] == {"verdict": False, "witness": ["w"]}
    assert d["simple"]["reason"] == "not super maximal; witness: {w}"
    assert d["gradedIdeals"] == [[], ["w"], ["u"], ["v", "w", "u"]]


def test_toeplitz_loop_has_extra_ideal():
    d = analyze(loop(), set()).to_dict()
    assert d["conditionL"]["verdict"] is True
    assert d["maximal"] is False
    assert d["superMaximal"] == {"verdict": False, "witness": ["v'"]}
    assert d["simple"]["verdict"] is False
    assert d["ckUniqueness"] == {"verdict": False}


def test_degenerate_graphs():
    p = analyze(point(), set()).to_dict()
    assert p["simple"]["verdict"] is True
    assert p["gradedIdeals"] == [[], ["v"]]
    e = analyze(empty(), set()).to_dict()
    assert e["gradedIdeals"] == [[]]
    assert e["conditionL"]["verdict"] and e["conditionK"]["verdict"]


def test_sink_in_relations_rejected():
    with pytest.raises(PreconditionError):
        condition_L(vw(), {"w"})
    with pytest.raises(PreconditionError):
        j_bracket(vw(), {"v"}, 0)


def test_loop_tail_conditions():
    assert condition_L(loop_tail(), {"v"})
    assert not condition_K(loop_tail(), {"v"})


# J-filtration


def test_j_bracket_examples():
    assert j_bracket(line3(), {"v1", "v2"}, 1) == {"v1", "v2"}
    assert j_bracket(line3(), {"v1", "v2"}, 2) == {"v1"}
    assert j_bracket(line3(), {"v1", "v2"}, 3) == set()
    assert j_infinity(loop(), {"v"}) == {"v"}
    assert j_infinity(fork(), {"v"}) == set()


@settings(max_examples=150, deadline=None)
@given(graph_with_relations(), st.integers(1, 5))
def test_j_bracket_path_characterization(data, k):
    g, x = data
    jk = j_bracket(g, x, k)
    for v in g.vertices:
        # every vertex reached by a path of length < k stays inside X
        inside = all(p.end in x for n in range(k) for p in paths_from(g, v, n))
        assert (v in jk) == inside


@settings(max_examples=100, deadline=None)
@given(graphs(), st.integers(1, 5))
def test_j_bracket_full_relations_has_long_paths(g, k):
    reg = regular_vertices(g)
    for v in j_bracket(g, reg, k):
        assert count_paths(g, v, k) > 0


@settings(max_examples=100, deadline=None)
@given(graph_with_relations(), st.integers(1, 6))
def test_j_bracket_decreasing(data, k):
    g, x = data
    assert j_bracket(g, x, k + 1) <= j_bracket(g, x, k) <= x
    assert j_infinity(g, x) <= j_bracket(g, x, k)


# condition laws


@settings(max_examples=150, deadline=None)
@given(graph_with_relations())
def test_condition_L_via_augmentation(data):
    g, x = data
    assert condition_L(g, x).holds == every_cycle_has_exit(augment_relative(g, x))


@given(graphs())
def test_toeplitz_always_satisfies_L(g):
    assert condition_L(g, set())


@settings(max_examples=150, deadline=None)
@given(graph_with_relations())
def test_condition_K_equivalent_to_quotient_form(data):
    g, x = data
    assert condition_K(g, x).holds == condition_K_via_quotients(g, x, cap=64).holds


@settings(max_examples=150, deadline=None)
@given(graph_with_relations())
def test_K_implies_L(data):
    g, x = data
    if condition_K(g, x):
        assert condition_L(g, x)


@settings(max_examples=150, deadline=None)
@given(graph_with_relations())
def test_report_consistency(data):
    g, x = data
    rep = analyze(g, x, cap=64)
    assert rep.simple == (rep.conditionL.holds and rep.superMaximal.holds)
    if rep.simple:
        assert rep.conditionK.holds
    assert rep.ckUniqueness == (rep.conditionL.holds and x == regular_vertices(g))
    assert rep.superMaximal.holds == is_super_maximal(g, x, cap=64).holds
    assert rep.allIdealsGraded == rep.conditionK.holds
    assert bool(rep.simple_reason) != rep.simple
