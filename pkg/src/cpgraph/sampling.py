"""Seeded random generators for expressions and homogeneous elements (used by property checks)."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra.element import AlgebraContext, Element, Monomial
from .algebra.parser import Gen, Node, Product, Scaled, Star, Sum
from .graph import Path, paths_into


def random_generator(ctx: AlgebraContext, rng: random.Random) -> Gen:
    g = ctx.graph
    choices = [("vertex", v) for v in g.vertices]
    choices += [(k, e) for e in g.edges for k in ("edge", "ghost")]
    kind, name = rng.choice(choices)
    return Gen(kind, name)


def random_scalar(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 5), rng.randint(1, 3))


def random_expression(ctx: AlgebraContext, rng: random.Random, depth: int = 5, leaf_prob: float = 0.35) -> Node:
    """Random tree of depth at most ``depth`` over ``ctx``'s generators."""
    if depth <= 1 or rng.random() < leaf_prob:
        return random_generator(ctx, rng)
    kind = rng.choice(("sum", "sum", "product", "product", "scaled", "star"))
    sub = lambda: random_expression(ctx, rng, depth - 1, leaf_prob)  # noqa: E731
    if kind == "sum":
        return Sum(tuple((rng.choice((1, -1)), sub()) for _ in range(rng.randint(2, 3))))
    if kind == "product":
        return Product((sub(), sub()))
    if kind == "scaled":
        return Scaled(random_scalar(rng), sub())
    return Star(sub())


def normal_monomials_of_degree(ctx: AlgebraContext, degree: int, max_length: int = 4) -> list[Monomial]:
    g = ctx.graph
    out = []
    for w in g.vertices:
        into = paths_into(g, w, max_length)
        for a in into:
            for b in into:
                m = Monomial(a, b)
                if m.degree == degree and ctx.is_normal(m):
                    out.append(m)
    out.sort(key=ctx.monomial_key)
    return out


def random_homogeneous(ctx: AlgebraContext, rng: random.Random, degree: int, max_terms: int = 3) -> Element:
    """Nonzero homogeneous element of the given degree (``ValueError`` if none exists)."""
    pool = normal_monomials_of_degree(ctx, degree)
    if not pool:
        raise ValueError(f"no monomials of degree {degree}")
    picks = rng.sample(pool, min(len(pool), rng.randint(1, max_terms)))
    signs = [rng.choice((1, -1)) * random_scalar(rng) for _ in picks]
    return ctx.element(dict(zip(picks, signs)))


def random_subset(rng: random.Random, items, proper: bool = True) -> frozenset:
    items = list(items)
    while True:
        chosen = frozenset(x for x in items if rng.random() < 0.5)
        if not proper or len(chosen) < len(items) or not items:
            return chosen


__all__ = [
    "Path",
    "random_expression",
    "random_generator",
    "random_homogeneous",
    "random_scalar",
    "random_subset",
]
