"""Deterministic census of small directed multigraphs, one per isomorphism class."""

from __future__ import annotations

from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

from .graph import Graph


def _canonical(n: int, arcs: tuple[tuple[int, int], ...]) -> tuple[tuple[int, int], ...]:
    best = None
    for perm in permutations(range(n)):
        relabeled = tuple(sorted((perm[a], perm[b]) for a, b in arcs))
        if best is None or relabeled < best:
            best = relabeled
    return best


def census(max_vertices: int = 4, max_edges: int = 6, limit: int | None = None) -> Iterator[Graph]:
    """Yield every multigraph with at most the given vertex and edge counts, up to isomorphism.

    Vertices are named ``v0, v1, ...`` and edges ``e0, e1, ...``; the order
    is deterministic (by vertex count, edge count, then canonical arc list).
    """
    emitted = 0
    for n in range(max_vertices + 1):
        pairs = list(product(range(n), repeat=2))
        for m in range(max_edges + 1):
            if n == 0 and m > 0:
                break
            seen: set[tuple[tuple[int, int], ...]] = set()
            for arcs in combinations_with_replacement(pairs, m):
                canon = _canonical(n, arcs)
                if canon in seen:
                    continue
                seen.add(canon)
                yield Graph(
                    [f"v{i}" for i in range(n)],
                    [(f"e{j}", f"v{a}", f"v{b}") for j, (a, b) in enumerate(canon)],
                )
                emitted += 1
                if limit is not None and emitted >= limit:
                    return
