"""Matrix families of Toeplitz-Cuntz-Krieger type and evaluation of elements in them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import PreconditionError, SchemaError, SemanticError
from ..graph import Graph, augmentation, has_closed_path, paths_into
from ..scalars import QQ, Field, parse_rational
from .element import AlgebraContext, Element


def _zeros(d: int, f: Field) -> np.ndarray:
    m = np.empty((d, d), dtype=object)
    m.fill(f.zero)
    return m


def _is_zero(m: np.ndarray) -> bool:
    return not any(bool(c) for c in m.flat)


def _equal(a: np.ndarray, b: np.ndarray) -> bool:
    return _is_zero(a - b)


def matrix_units(d: int, entries: Mapping[tuple[int, int], object], f: Field = QQ) -> np.ndarray:
    """``d x d`` matrix with the given ``(row, col)`` entries (1-based), zero elsewhere."""
    m = _zeros(d, f)
    for (i, j), c in entries.items():
        m[i - 1, j - 1] = f(c)
    return m


@dataclass(frozen=True)
class MatrixFamily:
    dim: int
    p: Mapping[str, np.ndarray]
    x: Mapping[str, np.ndarray]
    y: Mapping[str, np.ndarray]
    field: Field = QQ

    @classmethod
    def from_dict(cls, data: object, field: Field = QQ) -> "MatrixFamily":
        if not isinstance(data, Mapping):
            raise SchemaError("family must be a JSON object")
        d = data.get("dim")
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise SchemaError("expected a non-negative integer", "/dim")
        maps = {}
        for key in ("p", "x", "y"):
            block = data.get(key, {})
            if not isinstance(block, Mapping):
                raise SchemaError("expected an object of matrices", f"/{key}")
            mats = {}
            for name, rows in block.items():
                ptr = f"/{key}/{name}"
                if not isinstance(rows, list) or len(rows) != d:
                    raise SchemaError(f"expected {d} rows", ptr)
                m = _zeros(d, field)
                for i, row in enumerate(rows):
                    if not isinstance(row, list) or len(row) != d:
                        raise SchemaError(f"expected {d} entries", f"{ptr}/{i}")
                    for j, c in enumerate(row):
                        try:
                            m[i, j] = field(parse_rational(c))
                        except (ValueError, TypeError) as exc:
                            raise SchemaError(str(exc), f"{ptr}/{i}/{j}") from None
                mats[name] = m
            maps[key] = mats
        return cls(d, maps["p"], maps["x"], maps["y"], field)

    def to_dict(self) -> dict:
        fmt = self.field.format
        return {
            "dim": self.dim,
            **{
                key: {k: [[fmt(c) for c in row] for row in m.tolist()] for k, m in getattr(self, key).items()}
                for key in ("p", "x", "y")
            },
        }

    def require_cover(self, g: Graph) -> None:
        for key, names in (("p", g.vertices), ("x", g.edges), ("y", g.edges)):
            mats = getattr(self, key)
            for n in names:
                if n not in mats:
                    raise SemanticError(f"family has no {key}_{n}")
                if mats[n].shape != (self.dim, self.dim):
                    raise SemanticError(f"{key}_{n} is not {self.dim}x{self.dim}")


@dataclass(frozen=True)
class Violation:
    relation: str
    detail: str

    def __str__(self) -> str:
        return f"{self.relation}: {self.detail}"


@dataclass(frozen=True)
class TCKReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_tck_family(fam: MatrixFamily, g: Graph) -> TCKReport:
    """Check idempotency/orthogonality of the ``p_v`` and the three edge relations, listing every failure."""
    fam.require_cover(g)
    p, x, y = fam.p, fam.x, fam.y
    bad: list[Violation] = []
    for v in g.vertices:
        if not _equal(p[v] @ p[v], p[v]):
            bad.append(Violation("idempotent", f"p_{v} p_{v} != p_{v}"))
        for w in g.vertices:
            if w != v and not _is_zero(p[v] @ p[w]):
                bad.append(Violation("orthogonal", f"p_{v} p_{w} != 0"))
    for e in g.edges:
        s, r = g.s(e), g.r(e)
        if not _equal(p[s] @ x[e], x[e]):
            bad.append(Violation("source", f"p_{s} x_{e} != x_{e}"))
        if not _equal(x[e] @ p[r], x[e]):
            bad.append(Violation("source", f"x_{e} p_{r} != x_{e}"))
        if not _equal(p[r] @ y[e], y[e]):
            bad.append(Violation("range", f"p_{r} y_{e} != y_{e}"))
        if not _equal(y[e] @ p[s], y[e]):
            bad.append(Violation("range", f"y_{e} p_{s} != y_{e}"))
    for e in g.edges:
        for f in g.edges:
            prod = y[e] @ x[f]
            if e == f:
                if not _equal(prod, p[g.r(e)]):
                    bad.append(Violation("ghost", f"y_{e} x_{e} != p_{g.r(e)}"))
            elif not _is_zero(prod):
                bad.append(Violation("ghost", f"y_{e} x_{f} != 0"))
    return TCKReport(bad)


def _ck_sum(fam: MatrixFamily, g: Graph, v: str) -> np.ndarray:
    total = _zeros(fam.dim, fam.field)
    for e in g.out_edges(v):
        total = total + fam.x[e] @ fam.y[e]
    return total


@dataclass(frozen=True)
class InjectivityVerdict:
    injective: bool
    reasons: list[str]


def tck_injectivity_verdict(fam: MatrixFamily, g: Graph) -> InjectivityVerdict:
    """Whether the induced map from the Toeplitz ring is injective.

    Injective iff every ``p_v`` is nonzero and ``p_v != sum_{e in vE^1} x_e y_e``
    at every regular ``v``.
    """
    report = check_tck_family(fam, g)
    if not report.ok:
        raise PreconditionError(f"not a Toeplitz-Cuntz-Krieger family ({report.violations[0]})")
    reasons = []
    for v in g.vertices:
        if _is_zero(fam.p[v]):
            reasons.append(f"p_{v} = 0")
        elif g.out_edges(v) and _equal(fam.p[v], _ck_sum(fam, g, v)):
            rhs = " + ".join(f"x_{e} y_{e}" for e in g.out_edges(v))
            reasons.append(f"p_{v} = {rhs}")
    return InjectivityVerdict(not reasons, reasons)


def _check_for_context(fam: MatrixFamily, ctx: AlgebraContext) -> None:
    g = ctx.graph
    report = check_tck_family(fam, g)
    if not report.ok:
        raise PreconditionError(f"family violates {report.violations[0]}")
    for v in g.sort_vertices(ctx.relations):
        if not _equal(fam.p[v], _ck_sum(fam, g, v)):
            raise PreconditionError(f"family violates the Cuntz-Krieger relation at {v}: p_{v} != sum x_e y_e")


def evaluate(a: Element, fam: MatrixFamily, check: bool = True) -> np.ndarray:
    """Image of ``a`` under ``v -> p_v, e -> x_e, e* -> y_e``."""
    ctx = a.ctx
    if fam.field != ctx.field:
        raise PreconditionError("family and algebra use different fields")
    if check:
        _check_for_context(fam, ctx)
    total = _zeros(fam.dim, fam.field)
    for m, c in a.terms.items():
        acc = fam.p[m.alpha.start]
        for e in m.alpha.edges:
            acc = acc @ fam.x[e]
        acc = acc @ fam.p[m.alpha.end]
        for e in reversed(m.beta.edges):
            acc = acc @ fam.y[e]
        total = total + acc * c
    return total


def canonical_family(ctx: AlgebraContext) -> MatrixFamily:
    """Faithful family for an acyclic graph, acting on paths of the augmented graph that end at sinks.

    ``x_e`` prepends ``e`` (and sends the trivial path at ``r(e)'`` to ``e'``),
    ``y_e`` is its transpose and ``p_v`` projects onto paths starting at ``v`` or ``v'``.
    """
    g = ctx.graph
    if has_closed_path(g):
        raise PreconditionError("canonical family needs an acyclic graph")
    aug = augmentation(g, ctx.relations)
    ag = aug.graph
    basis = [p for w in ag.vertices if ag.is_sink(w) for p in paths_into(ag, w)]
    index = {p: i for i, p in enumerate(basis)}
    d = len(basis)
    f = ctx.field
    owner = {v: v for v in g.vertices} | {vp: v for v, vp in aug.sink_of.items()}
    p = {v: _zeros(d, f) for v in g.vertices}
    for i, path in enumerate(basis):
        p[owner[path.start]][i, i] = f.one
    x = {}
    for e in g.edges:
        m = _zeros(d, f)
        for j, path in enumerate(basis):
            if path.start == g.r(e):
                m[index[type(path)(g.s(e), path.end, (e,) + path.edges)], j] = f.one
            elif e in aug.edge_of and path.start == aug.sink_of[g.r(e)]:
                m[index[type(path)(g.s(e), path.end, (aug.edge_of[e],))], j] = f.one
        x[e] = m
    y = {e: m.T.copy() for e, m in x.items()}
    return MatrixFamily(d, p, x, y, f)
