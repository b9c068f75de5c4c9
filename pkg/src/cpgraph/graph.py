"""Finite directed multigraphs and the path, cycle and closure combinatorics on them.

Vertices and edges are string identifiers.  Every ordering in this package
("least", "lexicographic") is taken with respect to the order in which the
graph declares its vertices and edges, so reports are reproducible and follow
the input file rather than string collation.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import CapacityError, IdentifierError, PreconditionError, SchemaError

VertexSet = frozenset  # frozenset[str]

DEFAULT_CAP = 20

_IDENT = re.compile(r"^[!-~]+$")
_FORBIDDEN = set("*()+-")
_SCALAR_LIKE = re.compile(r"^\d+(/\d+)?$")


def valid_identifier(name: object) -> bool:
    return (
        isinstance(name, str)
        and bool(_IDENT.match(name))
        and not (_FORBIDDEN & set(name))
        and not _SCALAR_LIKE.match(name)
    )


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


class Graph:
    """Immutable finite directed multigraph ``(E^0, E^1, r, s)``."""

    __slots__ = ("vertices", "edges", "_src", "_dst", "_vindex", "_eindex", "_out", "_in")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge | tuple[str, str, str]] = ()):
        verts = tuple(vertices)
        vindex = {v: i for i, v in enumerate(verts)}
        if len(vindex) != len(verts):
            raise PreconditionError("duplicate vertex identifier")
        ids: list[str] = []
        src: dict[str, str] = {}
        dst: dict[str, str] = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            if e.id in src or e.id in vindex:
                raise PreconditionError(f"duplicate identifier {e.id!r}")
            for end in (e.src, e.dst):
                if end not in vindex:
                    raise IdentifierError(f"edge {e.id!r} refers to unknown vertex {end!r}")
            ids.append(e.id)
            src[e.id] = e.src
            dst[e.id] = e.dst
        out: dict[str, list[str]] = {v: [] for v in verts}
        inc: dict[str, list[str]] = {v: [] for v in verts}
        for e in ids:
            out[src[e]].append(e)
            inc[dst[e]].append(e)
        self.vertices: tuple[str, ...] = verts
        self.edges: tuple[str, ...] = tuple(ids)
        self._src = src
        self._dst = dst
        self._vindex = vindex
        self._eindex = {e: i for i, e in enumerate(ids)}
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}

    # -- basic structure -------------------------------------------------

    def s(self, e: str) -> str:
        self.check_edge(e)
        return self._src[e]

    def r(self, e: str) -> str:
        self.check_edge(e)
        return self._dst[e]

    def out_edges(self, v: str) -> tuple[str, ...]:
        self.check_vertex(v)
        return self._out[v]

    def in_edges(self, v: str) -> tuple[str, ...]:
        self.check_vertex(v)
        return self._in[v]

    def out_degree(self, v: str) -> int:
        return len(self.out_edges(v))

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def has_edge(self, e: str) -> bool:
        return e in self._src

    def check_vertex(self, v: str) -> None:
        if v not in self._vindex:
            raise IdentifierError(f"unknown vertex {v!r}")

    def check_edge(self, e: str) -> None:
        if e not in self._src:
            raise IdentifierError(f"unknown edge {e!r}")

    def check_vertices(self, vs: Iterable[str]) -> frozenset[str]:
        vs = frozenset(vs)
        for v in vs:
            self.check_vertex(v)
        return vs

    def vertex_key(self, v: str) -> int:
        return self._vindex[v]

    def edge_key(self, e: str) -> int:
        return self._eindex[e]

    def sort_vertices(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=self._vindex.__getitem__)

    def sort_edges(self, es: Iterable[str]) -> list[str]:
        return sorted(es, key=self._eindex.__getitem__)

    def set_key(self, vs: Iterable[str]) -> tuple[int, tuple[int, ...]]:
        """Sort key: size first, then the sorted tuple of vertex positions."""
        idx = tuple(sorted(self._vindex[v] for v in vs))
        return (len(idx), idx)

    def edge_triples(self) -> list[tuple[str, str, str]]:
        return [(e, self._src[e], self._dst[e]) for e in self.edges]

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"id": e, "src": s, "dst": d} for e, s, d in self.edge_triples()],
        }

    @classmethod
    def from_dict(cls, data: object) -> "Graph":
        if not isinstance(data, Mapping):
            raise SchemaError("graph must be a JSON object", "")
        verts = data.get("vertices")
        if not isinstance(verts, list):
            raise SchemaError("expected an array of vertex identifiers", "/vertices")
        seen: set[str] = set()
        for i, v in enumerate(verts):
            if not valid_identifier(v):
                raise SchemaError(f"invalid identifier {v!r}", f"/vertices/{i}")
            if v in seen:
                raise SchemaError(f"duplicate vertex {v!r}", f"/vertices/{i}")
            seen.add(v)
        edges = data.get("edges", [])
        if not isinstance(edges, list):
            raise SchemaError("expected an array of edges", "/edges")
        triples = []
        for i, item in enumerate(edges):
            ptr = f"/edges/{i}"
            if not isinstance(item, Mapping):
                raise SchemaError("edge must be an object", ptr)
            for key in ("id", "src", "dst"):
                if key not in item:
                    raise SchemaError(f"missing field {key!r}", ptr)
                if not valid_identifier(item[key]):
                    raise SchemaError(f"invalid identifier {item[key]!r}", f"{ptr}/{key}")
            if item["id"] in seen:
                raise SchemaError(f"duplicate identifier {item['id']!r}", f"{ptr}/id")
            seen.add(item["id"])
            for key in ("src", "dst"):
                if item[key] not in verts:
                    raise SchemaError(f"unknown vertex {item[key]!r}", f"{ptr}/{key}")
            triples.append((item["id"], item["src"], item["dst"]))
        return cls(verts, triples)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edge_triples() == other.edge_triples()

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edge_triples())))

    def __repr__(self) -> str:
        es = ", ".join(f"{e}:{s}->{d}" for e, s, d in self.edge_triples())
        return f"Graph(vertices={list(self.vertices)}, edges=[{es}])"


class Path(NamedTuple):
    """A path ``e_1 ... e_n`` from ``start`` to ``end``; length 0 means the vertex itself."""

    start: str
    end: str
    edges: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls(v, v, ())

    @classmethod
    def of(cls, g: Graph, edges: Sequence[str], start: str | None = None) -> "Path":
        edges = tuple(edges)
        if not edges:
            if start is None:
                raise PreconditionError("a length-0 path needs its base vertex")
            g.check_vertex(start)
            return cls.vertex(start)
        for a, b in zip(edges, edges[1:]):
            if g.r(a) != g.s(b):
                raise PreconditionError(f"edges {a!r} and {b!r} are not composable")
        s0 = g.s(edges[0])
        if start is not None and start != s0:
            raise PreconditionError(f"path does not start at {start!r}")
        return cls(s0, g.r(edges[-1]), edges)

    def extends(self, prefix: "Path") -> bool:
        return self.start == prefix.start and self.edges[: prefix.length] == prefix.edges

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else self.start


@dataclass(frozen=True)
class ClosedPath:
    path: Path
    simple: bool
    has_exit: bool

    @property
    def edges(self) -> tuple[str, ...]:
        return self.path.edges

    @property
    def base(self) -> str:
        return self.path.start

    def __str__(self) -> str:
        return str(self.path)


def closed_path(g: Graph, edges: Sequence[str]) -> ClosedPath:
    p = Path.of(g, edges)
    if p.start != p.end or not p.edges:
        raise PreconditionError("not a closed path")
    sources = [g.s(e) for e in p.edges]
    simple = all(v != sources[0] for v in sources[1:])
    has_exit = any(g.out_degree(v) > 1 for v in sources)
    return ClosedPath(p, simple, has_exit)


# -- paths ---------------------------------------------------------------


def count_paths(g: Graph, v: str, n: int) -> int:
    """Number ``|vE^n|`` of paths of length ``n`` leaving ``v``."""
    g.check_vertex(v)
    if n < 0:
        raise PreconditionError("path length must be non-negative")
    counts = {w: 1 for w in g.vertices}
    for _ in range(n):
        counts = {w: sum(counts[g.r(e)] for e in g.out_edges(w)) for w in g.vertices}
    return counts[v]


def paths_from(g: Graph, v: str, n: int) -> Iterator[Path]:
    """Paths of length ``n`` starting at ``v``, in lexicographic edge order."""
    g.check_vertex(v)

    def walk(at: str, acc: tuple[str, ...]) -> Iterator[Path]:
        if len(acc) == n:
            yield Path(v, at, acc)
            return
        for e in g.out_edges(at):
            yield from walk(g.r(e), acc + (e,))

    yield from walk(v, ())


def paths_of_length(g: Graph, n: int) -> Iterator[Path]:
    for v in g.vertices:
        yield from paths_from(g, v, n)


def paths_into(g: Graph, w: str, max_length: int | None = None) -> list[Path]:
    """All paths ending at ``w`` (including the trivial one); finite when no cycle reaches ``w``."""
    g.check_vertex(w)
    bound = len(g.edges) if max_length is None else max_length
    out = [Path.vertex(w)]
    frontier = [Path.vertex(w)]
    for _ in range(bound):
        nxt = []
        for p in frontier:
            for e in g.in_edges(p.start):
                nxt.append(Path(g.s(e), w, (e,) + p.edges))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return out


def has_closed_path(g: Graph) -> bool:
    indeg_free = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg_free[g.r(e)] += 1
    stack = [v for v, d in indeg_free.items() if d == 0]
    removed = 0
    while stack:
        v = stack.pop()
        removed += 1
        for e in g.out_edges(v):
            w = g.r(e)
            indeg_free[w] -= 1
            if indeg_free[w] == 0:
                stack.append(w)
    return removed < len(g.vertices)


def _path_key(g: Graph, p: Path | ClosedPath) -> tuple[int, ...]:
    return tuple(g.edge_key(e) for e in p.edges)


def simple_closed_paths_at(g: Graph, v: str, max_length: int | None = None) -> list[ClosedPath]:
    """Simple closed paths based at ``v`` (the base is never revisited mid-path).

    Paths may wind around cycles avoiding ``v``, so the full set can be
    infinite; only paths of length at most ``max_length`` (default
    ``|E^0|``, enough for every vertex-simple one) are listed.
    """
    g.check_vertex(v)
    bound = len(g.vertices) if max_length is None else max_length
    found: list[ClosedPath] = []

    def walk(at: str, acc: tuple[str, ...]) -> None:
        if len(acc) >= bound:
            return
        for e in g.out_edges(at):
            w = g.r(e)
            path = acc + (e,)
            if w == v:
                found.append(closed_path(g, path))
            else:
                walk(w, path)

    walk(v, ())
    found.sort(key=lambda c: _path_key(g, c))
    return found


def count_simple_closed_paths(g: Graph, v: str, limit: int = 2) -> int:
    """``min(limit, number of simple closed paths at v)``, exact even when the number is infinite.

    The interior of such a path avoids ``v``, so it is a route through ``E`` minus ``v``
    from a range of ``vE^1`` to a source of ``E^1v``. A cycle among the vertices lying
    on such routes gives infinitely many; otherwise they form a DAG and are counted.
    """
    g.check_vertex(v)
    starts = [g.r(e) for e in g.out_edges(v)]
    count = sum(1 for w in starts if w == v)
    reach = _closure([w for w in starts if w != v], lambda u: (g.r(e) for e in g.out_edges(u)), v)
    coreach = _closure([g.s(e) for e in g.in_edges(v) if g.s(e) != v], lambda u: (g.s(e) for e in g.in_edges(u)), v)
    live = reach & coreach
    inner = {u: [g.r(e) for e in g.out_edges(u) if g.r(e) in live] for u in live}
    ways: dict[str, int] = {}
    state: dict[str, int] = {}

    def count_from(u: str) -> int:
        # 1 = on stack, 2 = done
        state[u] = 1
        total = sum(1 for e in g.out_edges(u) if g.r(e) == v)
        for w in inner[u]:
            if state.get(w) == 1:
                raise _Infinite
            total += ways[w] if state.get(w) == 2 else count_from(w)
        state[u] = 2
        ways[u] = min(total, limit)
        return ways[u]

    try:
        for w in starts:
            if w in live:
                count += ways[w] if state.get(w) == 2 else count_from(w)
    except _Infinite:
        return limit
    return min(count, limit)


class _Infinite(Exception):
    pass


def _closure(seeds: Iterable[str], step, avoid: str) -> set[str]:
    seen = set(seeds)
    stack = list(seen)
    while stack:
        for w in step(stack.pop()):
            if w != avoid and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _rotation_representative(g: Graph, edges: tuple[str, ...]) -> tuple[str, ...]:
    n = len(edges)
    best = min(range(n), key=lambda i: (g.vertex_key(g.s(edges[i])), tuple(g.edge_key(e) for e in edges[i:] + edges[:i])))
    return edges[best:] + edges[:best]


def cycles_without_exit(g: Graph) -> list[ClosedPath]:
    """One rotation-normalized representative per closed path without an exit."""
    seen: set[tuple[str, ...]] = set()
    result: list[ClosedPath] = []
    for v in g.vertices:
        at, acc = v, []
        while g.out_degree(at) == 1 and len(acc) <= len(g.vertices):
            e = g.out_edges(at)[0]
            acc.append(e)
            at = g.r(e)
            if at == v:
                rep = _rotation_representative(g, tuple(acc))
                if rep not in seen:
                    seen.add(rep)
                    result.append(closed_path(g, rep))
                break
    result.sort(key=lambda c: _path_key(g, c))
    return result


def every_cycle_has_exit(g: Graph) -> bool:
    return not cycles_without_exit(g)


# -- vertex sets -----------------------------------------------------------


def regular_vertices(g: Graph) -> frozenset[str]:
    return frozenset(v for v in g.vertices if g.out_degree(v) >= 1)


def hereditary_closure(g: Graph, s: Iterable[str]) -> frozenset[str]:
    h = set(g.check_vertices(s))
    stack = list(h)
    while stack:
        v = stack.pop()
        for e in g.out_edges(v):
            w = g.r(e)
            if w not in h:
                h.add(w)
                stack.append(w)
    return frozenset(h)


def hereditary_saturated_closure(g: Graph, s: Iterable[str]) -> frozenset[str]:
    """Least hereditary and saturated vertex set containing ``s``."""
    h = set(hereditary_closure(g, s))
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v not in h and g.out_edges(v) and all(g.r(e) in h for e in g.out_edges(v)):
                h.add(v)
                changed = True
    return frozenset(h)


def is_hereditary(g: Graph, h: Iterable[str]) -> bool:
    h = g.check_vertices(h)
    return all(g.r(e) in h for v in h for e in g.out_edges(v))


def is_saturated(g: Graph, h: Iterable[str]) -> bool:
    h = g.check_vertices(h)
    return not any(
        v not in h and g.out_edges(v) and all(g.r(e) in h for e in g.out_edges(v)) for v in g.vertices
    )


def is_hereditary_saturated(g: Graph, h: Iterable[str]) -> bool:
    h = frozenset(h)
    return is_hereditary(g, h) and is_saturated(g, h)


def enumerate_hereditary_saturated(g: Graph, cap: int = DEFAULT_CAP) -> list[frozenset[str]]:
    """All hereditary saturated subsets, sorted by size and then position.

    Generated by closing ``H + {u}`` for every found ``H`` and every vertex
    ``u`` outside it, starting from the empty set.
    """
    if len(g.vertices) > cap:
        raise CapacityError(f"graph has {len(g.vertices)} vertices; enumeration cap is {cap}")
    if len(g.vertices) > DEFAULT_CAP:
        warnings.warn(f"enumerating hereditary saturated sets of a {len(g.vertices)}-vertex graph", RuntimeWarning)
    start = hereditary_saturated_closure(g, ())
    found = {start}
    queue = [start]
    while queue:
        h = queue.pop()
        for u in g.vertices:
            if u in h:
                continue
            k = hereditary_saturated_closure(g, h | {u})
            if k not in found:
                found.add(k)
                queue.append(k)
    return sorted(found, key=g.set_key)


def quotient_graph(g: Graph, h: Iterable[str]) -> Graph:
    """Graph ``E / H``: vertices outside ``H`` and edges whose range is outside ``H``."""
    h = g.check_vertices(h)
    if not is_hereditary_saturated(g, h):
        raise PreconditionError("quotient requires a hereditary saturated vertex set")
    return Graph(
        [v for v in g.vertices if v not in h],
        [(e, s, d) for e, s, d in g.edge_triples() if d not in h],
    )


def _fresh(name: str, taken: set[str]) -> str:
    new = name + "'"
    while new in taken:
        new += "'"
    taken.add(new)
    return new


@dataclass(frozen=True)
class Augmentation:
    """The augmented graph together with the names of the added sinks and edges."""

    graph: Graph
    sink_of: Mapping[str, str] = field(default_factory=dict)  # v -> v'
    edge_of: Mapping[str, str] = field(default_factory=dict)  # e -> e'


def augmentation(g: Graph, x: Iterable[str]) -> Augmentation:
    x = g.check_vertices(x)
    for v in g.sort_vertices(x):
        if g.is_sink(v):
            raise PreconditionError(f"relation set contains the sink {v!r}")
    taken = set(g.vertices) | set(g.edges)
    sink_of: dict[str, str] = {}
    edge_of: dict[str, str] = {}
    new_vertices = list(g.vertices)
    new_edges = g.edge_triples()
    for v in g.vertices:
        if g.out_edges(v) and v not in x:
            sink_of[v] = _fresh(v, taken)
            new_vertices.append(sink_of[v])
    for e, s, d in g.edge_triples():
        if d in sink_of:
            edge_of[e] = _fresh(e, taken)
            new_edges.append((edge_of[e], s, sink_of[d]))
    return Augmentation(Graph(new_vertices, new_edges), sink_of, edge_of)


def augment_relative(g: Graph, x: Iterable[str]) -> Graph:
    """Absolute graph whose Leavitt algebra is the relative Cohn algebra of ``(g, x)``.

    Each regular vertex ``v`` outside ``x`` gets a fresh sink ``v'`` and each
    edge ``e`` into ``v`` a fresh twin ``e'`` from ``s(e)`` to ``v'``.
    """
    return augmentation(g, x).graph
