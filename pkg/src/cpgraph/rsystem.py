"""The graph R-system ``(P, Q, psi)`` in coordinates.

``R`` has basis ``1_v`` (vertices), ``Q^{(n)}`` has basis ``1_alpha`` and
``P^{(n)}`` basis ``1_{alpha bar}`` for ``alpha`` in ``E^n``.  The bimodule
actions are diagonal:

    1_w . 1_alpha . 1_u = 1_alpha   iff  s(alpha) = w, r(alpha) = u     (Q side)
    1_w . 1_abar  . 1_u = 1_abar    iff  r(alpha) = w, s(alpha) = u     (P side)

and ``psi_n(1_abar, 1_beta) = [alpha = beta] 1_{r(alpha)}``.  Tensor powers
are indexed by concatenated paths, read left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import IdentifierError, PreconditionError
from .graph import ClosedPath, Graph, Path, paths_from, paths_of_length
from .scalars import QQ, Field, Scalar, format_rational

R_SIDE, P_SIDE, Q_SIDE = "R", "P", "Q"


@dataclass(frozen=True)
class BimoduleElement:
    """Finite combination of basis vectors of ``R`` (length 0) or of ``P^{(n)}`` / ``Q^{(n)}``.

    Keys are vertex ids on the ``R`` side and edge-id tuples otherwise.
    """

    side: str
    length: int
    coeffs: Mapping[object, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: c for k, c in self.coeffs.items() if c})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "BimoduleElement") -> "BimoduleElement":
        if (self.side, self.length) != (other.side, other.length):
            raise PreconditionError("adding elements of different modules")
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return BimoduleElement(self.side, self.length, acc)

    def scale(self, c: Scalar) -> "BimoduleElement":
        return BimoduleElement(self.side, self.length, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BimoduleElement):
            return NotImplemented
        if not self.coeffs and not other.coeffs:
            return self.side == other.side
        return (self.side, self.length, self.coeffs) == (other.side, other.length, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.side, self.length, frozenset(self.coeffs.items())))


class RSystemGraph:
    """The R-system of a finite graph over a coefficient field."""

    def __init__(self, graph: Graph, field: Field = QQ):
        self.graph = graph
        self.field = field
        self._inverse_cache: dict[tuple[frozenset[str], str], frozenset[str]] = {}

    # -- bases -------------------------------------------------------------

    def r_basis(self) -> list[str]:
        return list(self.graph.vertices)

    def q_basis(self, n: int = 1) -> list[tuple[str, ...]]:
        g = self.graph
        return sorted((p.edges for p in paths_of_length(g, n)), key=lambda es: tuple(g.edge_key(e) for e in es))

    p_basis = q_basis

    def unit(self, v: str) -> BimoduleElement:
        self.graph.check_vertex(v)
        return BimoduleElement(R_SIDE, 0, {v: self.field.one})

    def q(self, *edges: str, coeff: object = 1) -> BimoduleElement:
        self._check_path(edges)
        return BimoduleElement(Q_SIDE, len(edges), {tuple(edges): self.field(coeff)})

    def p(self, *edges: str, coeff: object = 1) -> BimoduleElement:
        self._check_path(edges)
        return BimoduleElement(P_SIDE, len(edges), {tuple(edges): self.field(coeff)})

    def r_element(self, vertices: Iterable[str]) -> BimoduleElement:
        return BimoduleElement(R_SIDE, 0, {v: self.field.one for v in self.graph.check_vertices(vertices)})

    def _check_path(self, edges: tuple[str, ...]) -> None:
        if not edges:
            raise PreconditionError("module basis vectors need at least one edge")
        Path.of(self.graph, edges)

    def _s(self, key: tuple[str, ...]) -> str:
        return self.graph.s(key[0])

    def _r(self, key: tuple[str, ...]) -> str:
        return self.graph.r(key[-1])

    # -- actions -----------------------------------------------------------

    def left(self, r: BimoduleElement, m: BimoduleElement) -> BimoduleElement:
        """``r . m`` for ``r`` in ``R``."""
        if r.side != R_SIDE:
            raise PreconditionError("left factor must lie in R")
        if m.side == R_SIDE:
            return BimoduleElement(R_SIDE, 0, {v: r.coeffs.get(v, 0) * c for v, c in m.coeffs.items()})
        anchor = self._s if m.side == Q_SIDE else self._r
        return BimoduleElement(m.side, m.length, {k: r.coeffs.get(anchor(k), 0) * c for k, c in m.coeffs.items()})

    def right(self, m: BimoduleElement, r: BimoduleElement) -> BimoduleElement:
        """``m . r`` for ``r`` in ``R``."""
        if r.side != R_SIDE:
            raise PreconditionError("right factor must lie in R")
        if m.side == R_SIDE:
            return self.left(m, r)
        anchor = self._r if m.side == Q_SIDE else self._s
        return BimoduleElement(m.side, m.length, {k: c * r.coeffs.get(anchor(k), 0) for k, c in m.coeffs.items()})

    def psi_n(self, p: BimoduleElement, q: BimoduleElement) -> BimoduleElement:
        """``sum_v (sum_{alpha in E^n v} p_alpha q_alpha) 1_v``."""
        if p.side != P_SIDE or q.side != Q_SIDE:
            raise PreconditionError("psi pairs a P-element with a Q-element")
        if p.coeffs and q.coeffs and p.length != q.length:
            raise PreconditionError("psi_n needs elements of equal length")
        acc: dict[str, Scalar] = {}
        for key, c in p.coeffs.items():
            d = q.coeffs.get(key)
            if d is not None:
                v = self._r(key)
                acc[v] = acc.get(v, 0) + c * d
        return BimoduleElement(R_SIDE, 0, acc)

    def psi(self, p: BimoduleElement, q: BimoduleElement) -> BimoduleElement:
        return self.psi_n(p, q)

    def tensor(self, a: BimoduleElement, b: BimoduleElement) -> BimoduleElement:
        """``a (x)_R b`` for Q-side elements; non-composable pairs vanish (balanced over R)."""
        if a.side != Q_SIDE or b.side != Q_SIDE:
            raise PreconditionError("tensor products are formed on the Q side")
        acc: dict[tuple[str, ...], Scalar] = {}
        for k1, c1 in a.coeffs.items():
            for k2, c2 in b.coeffs.items():
                if self._r(k1) == self._s(k2):
                    acc[k1 + k2] = acc.get(k1 + k2, 0) + c1 * c2
        return BimoduleElement(Q_SIDE, a.length + b.length, acc)

    def s_p(self, p: BimoduleElement, q: BimoduleElement) -> BimoduleElement:
        """``S_p`` on ``Q^{(n+1)}``: contract ``p`` against the first tensor leg, ``S_p(q1 (x) rest) = psi(p (x) q1) rest``."""
        if p.side != P_SIDE or p.length != 1 or q.side != Q_SIDE:
            raise PreconditionError("S_p takes a length-1 P element and a Q element")
        if q.length < 1:
            raise PreconditionError("S_p needs a tensor of length at least 1")
        acc: dict[tuple[str, ...], Scalar] = {}
        for key, c in q.coeffs.items():
            first, rest = key[:1], key[1:]
            pc = p.coeffs.get(first)
            if pc is None:
                continue
            if rest:
                acc[rest] = acc.get(rest, 0) + pc * c
            else:
                raise PreconditionError("S_p applied to a length-1 tensor lands in R; use psi")
        return BimoduleElement(Q_SIDE, q.length - 1, acc)

    def s_p_t_qn(self, p: BimoduleElement, qn: BimoduleElement, q: BimoduleElement) -> BimoduleElement:
        """``S_p T_{q_n}(q) = S_p(q_n (x) q)``, a Q-element of length ``n``."""
        if qn.side != Q_SIDE or q.side != Q_SIDE or (q.coeffs and q.length != 1):
            raise PreconditionError("expected q_n in Q^(n) and q in Q")
        n = qn.length
        if not qn.coeffs or not q.coeffs:
            return BimoduleElement(Q_SIDE, n, {})
        return self.s_p(p, self.tensor(qn, q))

    # -- psi inverse -------------------------------------------------------

    def psi_inverse(self, s: Iterable[str], mode: str = "recursive") -> frozenset[str]:
        """Vertices ``v`` with ``psi(p 1_v (x) q)`` in ``span{1_w : w in s}`` for all ``p, q``."""
        g = self.graph
        s = g.check_vertices(s)
        if mode not in ("recursive", "brute"):
            raise PreconditionError(f"unknown mode {mode!r}")
        hit = self._inverse_cache.get((s, mode))
        if hit is None:
            hit = self._psi_inverse(s, mode)
            self._inverse_cache[(s, mode)] = hit
        return hit

    def _psi_inverse(self, s: frozenset[str], mode: str) -> frozenset[str]:
        g = self.graph
        if mode == "recursive":
            return frozenset(v for v in g.vertices if all(g.r(e) in s for e in g.out_edges(v)))
        p_basis = [self.p(pe) for (pe,) in self.p_basis(1)]
        q_basis = [self.q(qe) for (qe,) in self.q_basis(1)]
        out = set()
        for v in g.vertices:
            x = self.unit(v)
            # p 1_v = 0 contributes only psi = 0
            pxs = [px for px in (self.right(p, x) for p in p_basis) if px]
            if all(w in s for px in pxs for q in q_basis for w in self.psi(px, q).coeffs):
                out.add(v)
        return frozenset(out)

    def ideal_bracket(self, x: Iterable[str], k: int, mode: str = "brute") -> frozenset[str]:
        """``I^[k]`` computed through ``psi_inverse``: ``I^[1] = X``, ``I^[k] = psi^-1(I^[k-1]) & X``."""
        if k < 1:
            raise PreconditionError("k must be at least 1")
        x = self.graph.check_vertices(x)
        current = x
        for _ in range(k - 1):
            nxt = self.psi_inverse(current, mode) & x
            if nxt == current:
                break
            current = nxt
        return current

    def ideal_infinity(self, x: Iterable[str], mode: str = "brute") -> frozenset[str]:
        x = self.graph.check_vertices(x)
        return self.ideal_bracket(x, len(x) + 1, mode)


def build_system(g: Graph, field: Field = QQ) -> RSystemGraph:
    return RSystemGraph(g, field)


@dataclass(frozen=True)
class EtaMap:
    """Monomial bimodule map ``1_v -> f_v 1_{alpha_v}`` into ``Q^{(n)}``."""

    n: int
    assignment: Mapping[str, tuple[tuple[str, ...], Scalar]]

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self.assignment)

    def image(self, v: str, sys: RSystemGraph) -> BimoduleElement:
        path, coeff = self.assignment[v]
        return BimoduleElement(Q_SIDE, self.n, {tuple(path): coeff})

    def scaled(self, c: Scalar) -> "EtaMap":
        return EtaMap(self.n, {v: (p, f * c) for v, (p, f) in self.assignment.items()})

    def to_dict(self, g: Graph | None = None) -> dict:
        keys = g.sort_vertices(self.assignment) if g else sorted(self.assignment)

        def fmt(c):
            return format_rational(c) if hasattr(c, "denominator") else str(c)

        return {
            "n": self.n,
            "map": {v: {"path": list(self.assignment[v][0]), "coeff": fmt(self.assignment[v][1])} for v in keys},
        }

    @classmethod
    def from_dict(cls, data: Mapping, field: Field = QQ) -> "EtaMap":
        return cls(
            int(data["n"]),
            {v: (tuple(item["path"]), field(item["coeff"])) for v, item in data["map"].items()},
        )


@dataclass(frozen=True)
class CycleCheck:
    ok: bool
    counterexample: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_invariant_cycle(sys: RSystemGraph, ideal: Iterable[str], eta: EtaMap) -> CycleCheck:
    """Exhaustively check that ``eta`` makes ``span{1_v : v in ideal}`` an invariant cycle.

    Checks, over basis elements: (i) ``eta`` is an R-bimodule map, (ii) it is
    injective, (iii) ``S_p T_{eta(x)}(q) = eta(psi(p x (x) q))`` for all
    ``p`` in ``P``, ``x = 1_v`` and ``q`` in ``Q`` (which also requires
    ``psi(p x (x) q)`` to stay inside the ideal).
    """
    g = sys.graph
    ideal = g.check_vertices(ideal)
    if eta.domain != ideal:
        raise PreconditionError("eta must be defined exactly on the ideal")
    order = g.sort_vertices(ideal)
    for v in order:
        path, coeff = eta.assignment[v]
        if len(path) != eta.n or eta.n < 1:
            return CycleCheck(False, f"eta(1_{v}) has the wrong length")
        try:
            Path.of(g, path)
        except (PreconditionError, IdentifierError):
            return CycleCheck(False, f"eta(1_{v}) is not a path")
    # (ii) injectivity
    seen: dict[tuple[str, ...], str] = {}
    for v in order:
        path, coeff = eta.assignment[v]
        if not coeff:
            return CycleCheck(False, f"eta(1_{v}) = 0, so eta is not injective")
        if tuple(path) in seen:
            return CycleCheck(False, f"eta(1_{seen[tuple(path)]}) and eta(1_{v}) coincide up to scale")
        seen[tuple(path)] = v

    def eta_of(r: BimoduleElement) -> BimoduleElement | None:
        acc = BimoduleElement(Q_SIDE, eta.n, {})
        for w, c in r.coeffs.items():
            if w not in ideal:
                return None
            acc = acc + eta.image(w, sys).scale(c)
        return acc

    # (i) bimodule map on basis triples
    for v in order:
        x = sys.unit(v)
        for w in g.vertices:
            for u in g.vertices:
                lhs = sys.right(sys.left(sys.unit(w), eta.image(v, sys)), sys.unit(u))
                rhs = eta_of(sys.right(sys.left(sys.unit(w), x), sys.unit(u)))
                if lhs != rhs:
                    return CycleCheck(False, f"1_{w} eta(1_{v}) 1_{u} != eta(1_{w} 1_{v} 1_{u})")
    # (iii) intertwining
    for (pe,) in sys.p_basis(1):
        p = sys.p(pe)
        for v in order:
            x = sys.unit(v)
            image = eta.image(v, sys)
            for (qe,) in sys.q_basis(1):
                q = sys.q(qe)
                lhs = sys.s_p_t_qn(p, image, q)
                val = sys.psi(sys.right(p, x), q)
                rhs = eta_of(val)
                where = f"p=1_{pe}bar, x=1_{v}, q=1_{qe}"
                if rhs is None:
                    return CycleCheck(False, f"{where}: psi(p x (x) q) leaves the ideal")
                if lhs != rhs:
                    return CycleCheck(False, f"{where}: S_p T_eta(x)(q) != eta(psi(p x (x) q))")
    return CycleCheck(True)


@dataclass(frozen=True)
class InvariantCycle:
    ideal: frozenset[str]
    n: int
    eta: EtaMap


def _rotation_eta(g: Graph, edges: tuple[str, ...], coeff: Scalar) -> EtaMap | None:
    n = len(edges)
    assignment: dict[str, tuple[tuple[str, ...], Scalar]] = {}
    for i in range(n):
        v = g.s(edges[i])
        rot = edges[i:] + edges[:i]
        if v in assignment and assignment[v][0] != rot:
            return None
        assignment[v] = (rot, coeff)
    return EtaMap(n, assignment)


def invariant_cycle_search(sys: RSystemGraph, max_n: int | None = None) -> list[InvariantCycle]:
    """All invariant cycles of monomial form, one per ideal, with smallest ``n``.

    Candidates are the rotation maps ``1_{s(e_i)} -> 1_{(e_i, ..., e_n, e_1, ..., e_{i-1})}``
    of closed paths of length ``n <= max_n`` (default ``|E^0|``); every
    candidate is kept only if :func:`verify_invariant_cycle` accepts it.
    """
    g = sys.graph
    bound = len(g.vertices) if max_n is None else max_n
    if bound < 1:
        return []
    found: dict[frozenset[str], InvariantCycle] = {}
    for n in range(1, bound + 1):
        for v in g.vertices:
            for path in paths_from(g, v, n):
                if path.end != v:
                    continue
                eta = _rotation_eta(g, path.edges, sys.field.one)
                if eta is None or eta.domain in found:
                    continue
                if verify_invariant_cycle(sys, eta.domain, eta):
                    found[eta.domain] = InvariantCycle(eta.domain, n, eta)
    return sorted(found.values(), key=lambda c: (c.n, g.set_key(c.ideal)))


def cycle_to_eta(g: Graph, cycle: ClosedPath, coeff: Scalar = 1) -> EtaMap:
    eta = _rotation_eta(g, cycle.edges, coeff)
    if eta is None:
        raise PreconditionError("cycle revisits a vertex with a different rotation")
    return eta


__all__ = [
    "BimoduleElement",
    "CycleCheck",
    "EtaMap",
    "InvariantCycle",
    "RSystemGraph",
    "build_system",
    "cycle_to_eta",
    "invariant_cycle_search",
    "verify_invariant_cycle",
]
