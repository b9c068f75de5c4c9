from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpgraph.algebra import AlgebraContext, evaluate_text, normal_basis, normal_form
from cpgraph.algebra.matrices import (
    MatrixFamily,
    canonical_family,
    check_tck_family,
    evaluate,
    matrix_units,
    tck_injectivity_verdict,
)
from cpgraph.errors import PreconditionError, SchemaError, SemanticError
from cpgraph.graph import Graph, regular_vertices
from cpgraph.sampling import random_expression
from cpgraph.zoo import fork, line3, loop, vw


def vw_family(y=None, dim=2, pv=None) -> MatrixFamily:
    return MatrixFamily(
        dim,
        p={"v": matrix_units(dim, pv or {(1, 1): 1}), "w": matrix_units(dim, {(2, 2): 1})},
        x={"e": matrix_units(dim, {(1, 2): 1})},
        y={"e": matrix_units(dim, y or {(2, 1): 1})},
    )


def rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    r = 0
    for col in range(len(rows[0]) if rows else 0):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col] / rows[r][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# relation checks


def test_vw_family_passes():
    assert check_tck_family(vw_family(), vw()).ok


def test_wrong_ghost_is_reported():
    rep = check_tck_family(vw_family(y={(1, 2): 1}), vw())
    assert not rep.ok
    assert any(v.detail == "y_e x_e != p_w" for v in rep.violations)


def test_zero_family_passes():
    z = MatrixFamily(2, {"v": matrix_units(2, {}), "w": matrix_units(2, {})}, {"e": matrix_units(2, {})}, {"e": matrix_units(2, {})})
    assert check_tck_family(z, vw()).ok
    assert tck_injectivity_verdict(z, vw()).reasons == ["p_v = 0", "p_w = 0"]


def test_missing_generator():
    fam = vw_family()
    with pytest.raises(SemanticError):
        check_tck_family(MatrixFamily(2, fam.p, {}, fam.y), vw())


def test_injectivity_verdicts():
    v = tck_injectivity_verdict(vw_family(), vw())
    assert not v.injective and v.reasons == ["p_v = x_e y_e"]
    big = vw_family(dim=3, pv={(1, 1): 1, (3, 3): 1})
    assert check_tck_family(big, vw()).ok
    assert tck_injectivity_verdict(big, vw()).injective
    with pytest.raises(PreconditionError):
        tck_injectivity_verdict(vw_family(y={(1, 2): 1}), vw())


def test_injectivity_checker_is_fast():
    start = time.perf_counter()
    tck_injectivity_verdict(vw_family(), vw())
    assert time.perf_counter() - start < 1.0


# json


def test_family_json_round_trip():
    fam = vw_family(dim=3, pv={(1, 1): "1/2", (3, 3): 1})
    again = MatrixFamily.from_dict(fam.to_dict())
    assert again.to_dict() == fam.to_dict()
    assert fam.to_dict()["p"]["v"][0][0] == "1/2"


@pytest.mark.parametrize(
    "data, pointer",
    [
        ({"dim": -1}, "/dim"),
        ({"dim": 1, "p": {"v": [[1], [0]]}}, "/p/v"),
        ({"dim": 1, "x": {"e": [["a"]]}}, "/x/e/0/0"),
        ({"dim": 2, "y": {"e": [[1, 0], [0]]}}, "/y/e/1"),
    ],
)
def test_family_schema_errors(data, pointer):
    with pytest.raises(SchemaError) as info:
        MatrixFamily.from_dict(data)
    assert info.value.pointer == pointer


# evaluation


def test_evaluate_examples():
    c = AlgebraContext(vw(), {"v"})
    fam = vw_family()
    assert not any(evaluate(evaluate_text("v - e e*", c), fam).flat)
    assert (evaluate(c.vertex("v"), fam) == fam.p["v"]).all()
    one = {"v": matrix_units(1, {(1, 1): 1})}
    lf = MatrixFamily(1, one, {"e": matrix_units(1, {(1, 1): 1})}, {"e": matrix_units(1, {(1, 1): 1})})
    assert not any(evaluate(evaluate_text("e e* - v", AlgebraContext(loop(), {"v"})), lf).flat)


def test_evaluate_refuses_family_without_ck2():
    fam = vw_family(dim=3, pv={(1, 1): 1, (3, 3): 1})
    with pytest.raises(PreconditionError):
        evaluate(AlgebraContext(vw(), {"v"}).vertex("v"), fam)
    evaluate(AlgebraContext(vw(), set()).vertex("v"), fam)


ACYCLIC = [line3(), fork(), vw(), Graph(["a", "b", "c"], [("p", "a", "b"), ("q", "a", "b"), ("s", "b", "c"), ("t", "a", "c")])]
CASES = [(g, x) for g in ACYCLIC for x in (regular_vertices(g), frozenset())]


@pytest.mark.parametrize("g, x", CASES)
def test_canonical_family_is_admissible_and_faithful(g, x):
    c = AlgebraContext(g, x)
    fam = canonical_family(c)
    assert check_tck_family(fam, g).ok
    basis = normal_basis(c)
    assert len(basis) <= fam.dim ** 2
    images = [[cell for cell in evaluate(c.element({m: 1}), fam).flat] for m in basis]
    assert rank(images) == len(basis)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CASES))
def test_evaluation_is_a_homomorphism(seed, case):
    c = AlgebraContext(*case)
    fam = canonical_family(c)
    rng = random.Random(seed)
    a, b = (normal_form(random_expression(c, rng, depth=3), c) for _ in range(2))
    ea, eb = evaluate(a, fam), evaluate(b, fam)
    assert ((ea @ eb) == evaluate(a * b, fam)).all()
    assert ((ea + eb) == evaluate(a + b, fam)).all()
    assert (ea.T == evaluate(a.star(), fam)).all()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CASES))
def test_zero_test_soundness(seed, case):
    c = AlgebraContext(*case)
    fam = canonical_family(c)
    rng = random.Random(seed)
    a = normal_form(random_expression(c, rng, depth=4), c)
    b = normal_form(random_expression(c, rng, depth=4), c)
    same = (evaluate(a, fam) == evaluate(b, fam)).all()
    assert same == (a - b).is_zero()
    assert (evaluate(a, fam) == evaluate(a + b - b, fam)).all()


def test_canonical_family_needs_acyclic():
    with pytest.raises(PreconditionError):
        canonical_family(AlgebraContext(loop(), set()))
