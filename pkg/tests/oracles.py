"""Brute-force reference computations, kept independent of the library's algorithms."""

from __future__ import annotations

from itertools import chain, combinations, product

from cpgraph.graph import Graph


def edge_sequences(g: Graph, n: int):
    """Every composable edge sequence of length ``n`` (by enumerating E^n as tuples)."""
    for seq in product(g.edges, repeat=n):
        if all(g.r(a) == g.s(b) for a, b in zip(seq, seq[1:])):
            yield seq


def count_paths_brute(g: Graph, v: str, n: int) -> int:
    if n == 0:
        return 1
    return sum(1 for seq in edge_sequences(g, n) if g.s(seq[0]) == v)


def subsets(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k) for k in range(len(items) + 1))]


def hereditary(g: Graph, h) -> bool:
    return all(g.r(e) in h for e in g.edges if g.s(e) in h)


def saturated(g: Graph, h) -> bool:
    for v in g.vertices:
        outs = [e for e in g.edges if g.s(e) == v]
        if outs and v not in h and all(g.r(e) in h for e in outs):
            return False
    return True


def hs_sets_brute(g: Graph) -> set[frozenset]:
    return {h for h in subsets(g.vertices) if hereditary(g, h) and saturated(g, h)}


def closed_paths_brute(g: Graph, max_len: int):
    for n in range(1, max_len + 1):
        for seq in edge_sequences(g, n):
            if g.r(seq[-1]) == g.s(seq[0]):
                yield seq


def rotation_class(seq: tuple) -> frozenset:
    return frozenset(seq[i:] + seq[:i] for i in range(len(seq)))


def primitive(seq: tuple) -> bool:
    n = len(seq)
    return all(seq != seq[d:] + seq[:d] for d in range(1, n))


def cycles_without_exit_brute(g: Graph) -> set[frozenset]:
    """Rotation classes of primitive closed paths none of whose sources emits a second edge."""
    out = set()
    for seq in closed_paths_brute(g, len(g.vertices)):
        if primitive(seq) and all(sum(1 for e in g.edges if g.s(e) == g.s(f)) == 1 for f in seq):
            out.add(rotation_class(seq))
    return out


def paths_into_brute(g: Graph, w: str, max_len: int) -> int:
    total = 1
    for n in range(1, max_len + 1):
        total += sum(1 for seq in edge_sequences(g, n) if g.r(seq[-1]) == w)
    return total
