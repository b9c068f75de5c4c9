"""Normal-form arithmetic in relative Cohn path algebras.

An element is a finite linear combination of monomials ``alpha beta*`` with
``r(alpha) = r(beta)``.  At each relation vertex ``v`` the Cuntz-Krieger
relation ``v = sum_{e in vE^1} e e*`` is imposed, oriented so that the
special edge ``gamma_v`` is eliminated:

    (alpha gamma_v)(beta gamma_v)*  ->  alpha beta* - sum_{e != gamma_v} (alpha e)(beta e)*

Monomials with no such tail form a basis, so equality is equality of
normal forms.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, NamedTuple

from ..errors import CapacityError, PreconditionError
from ..graph import Graph, Path, has_closed_path, paths_from, paths_into, paths_of_length
from ..scalars import QQ, Field, Scalar

INFINITE = "infinite"
ZERO = "zero"


class Monomial(NamedTuple):
    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha.edges) - len(self.beta.edges)

    @property
    def source(self) -> str:
        return self.alpha.start

    @property
    def target(self) -> str:
        """Vertex the monomial ends at on the right, ``s(beta)``."""
        return self.beta.start

    def star(self) -> "Monomial":
        return Monomial(self.beta, self.alpha)

    def __str__(self) -> str:
        letters = list(self.alpha.edges) + [f"{e}*" for e in reversed(self.beta.edges)]
        return " ".join(letters) if letters else self.alpha.start


def monomial_product(m1: Monomial, m2: Monomial) -> Monomial | None:
    """``(alpha beta*)(gamma delta*)`` as a single monomial, or ``None`` when it vanishes."""
    alpha, beta = m1
    gamma, delta = m2
    if beta.start != gamma.start:
        return None
    nb, ng = len(beta.edges), len(gamma.edges)
    if ng >= nb:
        if gamma.edges[:nb] != beta.edges:
            return None
        rest = gamma.edges[nb:]
        return Monomial(Path(alpha.start, gamma.end, alpha.edges + rest), delta)
    if beta.edges[:ng] != gamma.edges:
        return None
    rest = beta.edges[ng:]
    return Monomial(alpha, Path(delta.start, beta.end, delta.edges + rest))


class AlgebraContext:
    """Graph, relation set ``X`` and special-edge choice fixing one relative Cohn algebra."""

    def __init__(
        self,
        graph: Graph,
        relations: Iterable[str],
        special_edges: Mapping[str, str] | None = None,
        field: Field = QQ,
    ):
        x = graph.check_vertices(relations)
        for v in graph.sort_vertices(x):
            if graph.is_sink(v):
                raise PreconditionError(f"relation set contains the sink {v!r}")
        chosen = dict(special_edges or {})
        if set(chosen) - x:
            raise PreconditionError("special edges given outside the relation set")
        gamma: dict[str, str] = {}
        for v in graph.sort_vertices(x):
            e = chosen.get(v, graph.out_edges(v)[0])
            graph.check_edge(e)
            if graph.s(e) != v:
                raise PreconditionError(f"special edge {e!r} does not leave {v!r}")
            gamma[v] = e
        self.graph = graph
        self.relations = x
        self.special_edge = gamma
        self.field = field
        self._special = frozenset(gamma.values())
        self._siblings = {v: tuple(e for e in graph.out_edges(v) if e != gamma[v]) for v in gamma}
        self._cache: dict[Monomial, dict[Monomial, int]] = {}

    @classmethod
    def leavitt(cls, graph: Graph, field: Field = QQ) -> "AlgebraContext":
        return cls(graph, [v for v in graph.vertices if graph.out_edges(v)], field=field)

    @classmethod
    def toeplitz(cls, graph: Graph, field: Field = QQ) -> "AlgebraContext":
        return cls(graph, (), field=field)

    def _key(self):
        return (self.graph, self.relations, tuple(sorted(self.special_edge.items())), self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraContext):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"AlgebraContext({self.graph!r}, relations={self.graph.sort_vertices(self.relations)}, field={self.field!r})"

    # -- monomials -------------------------------------------------------

    def is_normal(self, m: Monomial) -> bool:
        a, b = m.alpha.edges, m.beta.edges
        return not (a and b and a[-1] == b[-1] and a[-1] in self._special)

    def reduce_monomial(self, m: Monomial) -> dict[Monomial, int]:
        """Integer combination of normal monomials equal to ``m``."""
        if self.is_normal(m):
            return {m: 1}
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        g = self.graph
        alpha, beta = m
        v = g.s(alpha.edges[-1])
        out: dict[Monomial, int] = defaultdict(int)
        head = Monomial(Path(alpha.start, v, alpha.edges[:-1]), Path(beta.start, v, beta.edges[:-1]))
        for mono, c in self.reduce_monomial(head).items():
            out[mono] += c
        for e in self._siblings[v]:
            w = g.r(e)
            out[Monomial(Path(alpha.start, w, alpha.edges[:-1] + (e,)), Path(beta.start, w, beta.edges[:-1] + (e,)))] -= 1
        result = {k: c for k, c in out.items() if c}
        self._cache[m] = result
        return result

    def monomial_key(self, m: Monomial) -> tuple:
        g = self.graph
        return (
            len(m.alpha.edges) + len(m.beta.edges),
            tuple(g.edge_key(e) for e in m.alpha.edges),
            tuple(g.edge_key(e) for e in m.beta.edges),
            g.vertex_key(m.alpha.start),
            g.vertex_key(m.beta.start),
        )

    # -- element constructors ----------------------------------------------

    def element(self, terms: Mapping[Monomial, object] | Iterable[tuple[Monomial, object]] = ()) -> "Element":
        acc: dict[Monomial, Scalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            c = self.field(c)
            if not c:
                continue
            for mono, k in self.reduce_monomial(m).items():
                acc[mono] = acc.get(mono, 0) + c * k
        return Element(self, {m: c for m, c in acc.items() if c})

    def zero(self) -> "Element":
        return Element(self, {})

    def vertex(self, v: str) -> "Element":
        self.graph.check_vertex(v)
        p = Path.vertex(v)
        return Element(self, {Monomial(p, p): self.field.one})

    def edge(self, e: str) -> "Element":
        g = self.graph
        return Element(self, {Monomial(Path(g.s(e), g.r(e), (e,)), Path.vertex(g.r(e))): self.field.one})

    def ghost(self, e: str) -> "Element":
        return self.edge(e).star()

    def path(self, p: Path) -> "Element":
        return self.element({Monomial(p, Path.vertex(p.end)): 1})

    def unit(self) -> "Element":
        """The identity ``sum_v v`` (the graph is finite)."""
        return sum((self.vertex(v) for v in self.graph.vertices), self.zero())


class Element:
    """Immutable element in normal form; ``terms`` maps normal monomials to nonzero scalars."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: Mapping[Monomial, Scalar]):
        self.ctx = ctx
        self.terms = dict(terms)

    def _same(self, other: "Element") -> None:
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise PreconditionError("operands belong to different algebra contexts")

    def _lift(self, other) -> "Element | None":
        if isinstance(other, Element):
            self._same(other)
            return other
        return None

    def __add__(self, other: "Element") -> "Element":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Element(self.ctx, acc)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:  # so sum() works
            return self
        return NotImplemented

    def __neg__(self) -> "Element":
        return Element(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, c: object) -> "Element":
        c = self.ctx.field(c)
        if not c:
            return self.ctx.zero()
        return Element(self.ctx, {m: c * k for m, k in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        self._same(other)
        ctx = self.ctx
        acc: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_product(m1, m2)
                if m is None:
                    continue
                c = c1 * c2
                for mono, k in ctx.reduce_monomial(m).items():
                    acc[mono] = acc.get(mono, 0) + c * k
        return Element(ctx, {m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def star(self) -> "Element":
        """The involution ``alpha beta* -> beta alpha*`` (coefficients fixed)."""
        return Element(self.ctx, {m.star(): c for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def homogeneous_degree(self) -> int | None:
        """The degree if all terms share one, ``None`` for zero or mixed elements."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda mc: self.ctx.monomial_key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.ctx.field.format
        parts: list[str] = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = self.ctx.field.characteristic == 0 and c < 0
            mag = -c if neg else c
            body = str(m) if mag == 1 else f"{fmt(mag)} {m}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{'-' if neg else '+'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Element({self})"


def graded_component(a: Element, n: int) -> Element:
    return Element(a.ctx, {m: c for m, c in a.terms.items() if m.degree == n})


def normal_basis(ctx: AlgebraContext, cap: int = 100_000) -> list[Monomial]:
    """All normal monomials; only meaningful (finite) when the graph is acyclic."""
    g = ctx.graph
    if has_closed_path(g):
        raise CapacityError("the algebra is infinite-dimensional")
    basis: list[Monomial] = []
    for w in g.vertices:
        into = paths_into(g, w)
        for a in into:
            for b in into:
                m = Monomial(a, b)
                if ctx.is_normal(m):
                    basis.append(m)
                    if len(basis) > cap:
                        raise CapacityError(f"more than {cap} basis monomials")
    basis.sort(key=ctx.monomial_key)
    return basis


def dimension_if_finite(ctx: AlgebraContext, cap: int = 100_000) -> int | str:
    """Dimension over the field, or ``"infinite"`` when the graph has a closed path."""
    if has_closed_path(ctx.graph):
        return INFINITE
    return len(normal_basis(ctx, cap))


def homogeneous_probe(a: Element, cap: int = 100_000) -> Path | str:
    """A path ``alpha`` of length ``|n|`` with ``alpha* a != 0`` (degree ``n > 0``) or ``a alpha != 0`` (``n < 0``).

    Returns ``"zero"`` exactly when ``a`` is zero.
    """
    if a.is_zero():
        return ZERO
    n = a.homogeneous_degree()
    if n is None:
        raise PreconditionError("element is not homogeneous")
    if n == 0:
        raise PreconditionError("probe needs a nonzero degree")
    ctx = a.ctx
    tried = 0
    for alpha in sorted(paths_of_length(ctx.graph, abs(n)), key=lambda p: tuple(ctx.graph.edge_key(e) for e in p.edges)):
        tried += 1
        if tried > cap:
            raise CapacityError(f"probe exceeded {cap} candidate paths")
        p = ctx.path(alpha)
        if (p.star() * a if n > 0 else a * p).terms:
            return alpha
    raise AssertionError("no witness path found for a nonzero homogeneous element")


def lemma3_identity_check(g: Graph, x: Iterable[str], v: str, k: int, field: Field = QQ) -> bool:
    """Whether ``v = sum_{alpha in vE^k} alpha alpha*`` holds in the ``x``-relative algebra."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    ctx = AlgebraContext(g, x, field=field)
    total = ctx.vertex(v)
    terms = {Monomial(alpha, alpha): 1 for alpha in paths_from(g, v, k)}
    return (total - ctx.element(terms)).is_zero()
