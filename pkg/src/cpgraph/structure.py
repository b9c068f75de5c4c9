"""Decision procedures for the structural properties of relative graph rings.

The ring is fixed by a graph ``g`` and a relation set ``x`` of regular
vertices at which the Cuntz-Krieger relation is imposed: ``x = Reg(g)``
gives the Leavitt path algebra, ``x = {}`` the Toeplitz (Cohn) ring.
Relative questions are answered on ``augment_relative(g, x)``; the direct
``J^[inf]`` route is kept alongside for condition (L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import PreconditionError
from .graph import (
    DEFAULT_CAP,
    ClosedPath,
    Graph,
    augment_relative,
    count_simple_closed_paths,
    cycles_without_exit,
    enumerate_hereditary_saturated,
    every_cycle_has_exit,
    quotient_graph,
    regular_vertices,
)

__all__ = [
    "AnalysisReport",
    "Verdict",
    "analyze",
    "check_relations",
    "condition_K",
    "condition_K_via_quotients",
    "condition_L",
    "is_maximal",
    "is_super_maximal",
    "j_bracket",
    "j_infinity",
    "regular_vertices",
]


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


def check_relations(g: Graph, x: Iterable[str]) -> frozenset[str]:
    """Validate a relation set: known vertices, none of them a sink."""
    x = g.check_vertices(x)
    for v in g.sort_vertices(x):
        if g.is_sink(v):
            raise PreconditionError(f"relation set contains the sink {v!r}")
    return x


def j_bracket(g: Graph, x: Iterable[str], k: int) -> frozenset[str]:
    """``J^[k]``: ``J^[1] = X`` and ``J^[k]`` keeps the ``v`` in ``X`` whose edges all land in ``J^[k-1]``."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    x = check_relations(g, x)
    current = x
    for _ in range(k - 1):
        nxt = frozenset(v for v in x if all(g.r(e) in current for e in g.out_edges(v)))
        if nxt == current:
            break
        current = nxt
    return current


def j_infinity(g: Graph, x: Iterable[str]) -> frozenset[str]:
    x = check_relations(g, x)
    return j_bracket(g, x, len(x) + 1)


def condition_L(g: Graph, x: Iterable[str]) -> Verdict:
    """Fails iff a cycle without exit lies entirely inside ``J^[inf]``; witness is the least such cycle."""
    jinf = j_infinity(g, x)
    for c in cycles_without_exit(g):
        if all(g.s(e) in jinf for e in c.edges):
            return Verdict(False, c)
    return Verdict(True)


def condition_K(g: Graph, x: Iterable[str]) -> Verdict:
    """Every vertex of the augmented graph bases no closed path or at least two simple ones."""
    aug = augment_relative(g, check_relations(g, x))
    for v in aug.vertices:
        if count_simple_closed_paths(aug, v) == 1:
            return Verdict(False, v)
    return Verdict(True)


def condition_K_via_quotients(g: Graph, x: Iterable[str], cap: int = DEFAULT_CAP) -> Verdict:
    aug = augment_relative(g, check_relations(g, x))
    for h in enumerate_hereditary_saturated(aug, cap):
        if not every_cycle_has_exit(quotient_graph(aug, h)):
            return Verdict(False, h)
    return Verdict(True)


def is_maximal(g: Graph, x: Iterable[str]) -> bool:
    return check_relations(g, x) == regular_vertices(g)


def is_super_maximal(g: Graph, x: Iterable[str], cap: int = DEFAULT_CAP) -> Verdict:
    aug = augment_relative(g, check_relations(g, x))
    full = frozenset(aug.vertices)
    for h in enumerate_hereditary_saturated(aug, cap):
        if h and h != full:
            return Verdict(False, h)
    return Verdict(True)


@dataclass(frozen=True)
class AnalysisReport:
    graph: Graph
    relations: frozenset[str]
    conditionL: Verdict
    conditionK: Verdict
    maximal: bool
    superMaximal: Verdict
    simple: bool
    simple_reasons: tuple[str, ...]
    ckUniqueness: bool
    gradedIdeals: list[frozenset[str]]
    allIdealsGraded: bool
    everyNonzeroIdealContainsGraded: bool
    jInfinity: frozenset[str]
    augmented: Graph = field(repr=False, default=None)

    @property
    def simple_reason(self) -> str:
        return "; ".join(self.simple_reasons)

    def to_dict(self) -> dict:
        g, aug = self.graph, self.augmented

        def cycle(w: ClosedPath | None):
            return None if w is None else list(w.edges)

        return {
            "relations": g.sort_vertices(self.relations),
            "conditionL": {"verdict": self.conditionL.holds, "witness": cycle(self.conditionL.witness)},
            "conditionK": {"verdict": self.conditionK.holds, "witness": self.conditionK.witness},
            "maximal": self.maximal,
            "superMaximal": {
                "verdict": self.superMaximal.holds,
                "witness": None if self.superMaximal.witness is None else aug.sort_vertices(self.superMaximal.witness),
            },
            "simple": {"verdict": self.simple, "reason": self.simple_reason},
            "ckUniqueness": {"verdict": self.ckUniqueness},
            "gradedIdeals": [aug.sort_vertices(h) for h in self.gradedIdeals],
            "allIdealsGraded": self.allIdealsGraded,
            "everyNonzeroIdealContainsGraded": self.everyNonzeroIdealContainsGraded,
            "jInfinity": g.sort_vertices(self.jInfinity),
        }


def analyze(g: Graph, x: Iterable[str], cap: int = DEFAULT_CAP) -> AnalysisReport:
    x = check_relations(g, x)
    aug = augment_relative(g, x)
    cond_l = condition_L(g, x)
    cond_k = condition_K(g, x)
    maximal = is_maximal(g, x)
    graded = enumerate_hereditary_saturated(aug, cap)
    full = frozenset(aug.vertices)
    nontrivial = [h for h in graded if h and h != full]
    supermax = Verdict(not nontrivial, nontrivial[0] if nontrivial else None)
    reasons = []
    if not cond_l:
        reasons.append(f"condition (L) fails; witness cycle: {cond_l.witness}")
    if not supermax:
        reasons.append(f"not super maximal; witness: {{{', '.join(aug.sort_vertices(supermax.witness))}}}")
    return AnalysisReport(
        graph=g,
        relations=x,
        conditionL=cond_l,
        conditionK=cond_k,
        maximal=maximal,
        superMaximal=supermax,
        simple=cond_l.holds and supermax.holds,
        simple_reasons=tuple(reasons),
        ckUniqueness=cond_l.holds and maximal,
        gradedIdeals=graded,
        allIdealsGraded=cond_k.holds,
        everyNonzeroIdealContainsGraded=cond_l.holds,
        jInfinity=j_infinity(g, x),
        augmented=aug,
    )
