"""Word rewriting with a caller-controlled (randomizable) strategy.

This is a second, independent route to normal forms: an expression is
expanded into words over the letters ``v`` (vertex), ``e`` (edge) and
``e*`` (ghost edge) and reduced by local rules on adjacent letter pairs.

    v w     -> [v = w] v            e* f   -> [e = f] r(e)
    v e     -> [v = s(e)] e         e v    -> [r(e) = v] e
    v e*    -> [v = r(e)] e*        e* v   -> [s(e) = v] e*
    e f     -> 0 if r(e) != s(f)    e* f*  -> 0 if s(e) != r(f)
    e f*    -> 0 if r(e) != r(f)
    g g*    -> v - sum_{e in vE^1, e != g} e e*      (g the special edge at relation vertex v)

Every rule shortens the word or removes one special-edge junction, so any
strategy terminates.  Irreducible words are exactly the normal monomials.
"""

from __future__ import annotations

import random
from collections import defaultdict
from typing import Callable, Sequence

from ..graph import Path
from ..scalars import Scalar
from .element import AlgebraContext, Element, Monomial
from .parser import Gen, Node, Product, Scaled, Star, Sum, Zero

Letter = tuple[str, str]  # ("v" | "e" | "g", identifier)
Word = tuple[Letter, ...]
Combo = dict[Word, Scalar]

Chooser = Callable[[Sequence], object]


def _star_word(w: Word) -> Word:
    swap = {"v": "v", "e": "g", "g": "e"}
    return tuple((swap[k], name) for k, name in reversed(w))


def expand(raw: Node, ctx: AlgebraContext) -> Combo:
    """Distribute a raw tree into a linear combination of (unreduced) words."""
    f = ctx.field
    if isinstance(raw, Gen):
        return {((raw.kind[0] if raw.kind != "ghost" else "g", raw.name),): f.one}
    if isinstance(raw, Zero):
        return {}
    if isinstance(raw, Scaled):
        s = f(raw.scalar)
        return {w: c * s for w, c in expand(raw.body, ctx).items() if c * s}
    if isinstance(raw, Star):
        return {_star_word(w): c for w, c in expand(raw.body, ctx).items()}
    if isinstance(raw, Product):
        acc: Combo = {(): f.one}
        for factor in raw.factors:
            part = expand(factor, ctx)
            nxt: dict[Word, Scalar] = defaultdict(lambda: f.zero)
            for w1, c1 in acc.items():
                for w2, c2 in part.items():
                    nxt[w1 + w2] += c1 * c2
            acc = {w: c for w, c in nxt.items() if c}
        return acc
    if isinstance(raw, Sum):
        acc = defaultdict(lambda: f.zero)
        for sign, t in raw.terms:
            for w, c in expand(t, ctx).items():
                acc[w] += c if sign > 0 else -c
        return {w: c for w, c in acc.items() if c}
    raise TypeError(f"not an expression node: {raw!r}")


def _rewrite_pair(ctx: AlgebraContext, a: Letter, b: Letter) -> list[tuple[int, Word]] | None:
    """Replacement for the adjacent pair ``a b`` as (coefficient, word) list, or ``None`` if no rule applies."""
    g = ctx.graph
    ka, x = a
    kb, y = b
    zero: list[tuple[int, Word]] = []
    if ka == "v":
        if kb == "v":
            return [(1, (a,))] if x == y else zero
        if kb == "e":
            return [(1, (b,))] if g.s(y) == x else zero
        return [(1, (b,))] if g.r(y) == x else zero
    if kb == "v":
        end = g.r(x) if ka == "e" else g.s(x)
        return [(1, (a,))] if end == y else zero
    if ka == "e" and kb == "e":
        return None if g.r(x) == g.s(y) else zero
    if ka == "g" and kb == "g":
        return None if g.s(x) == g.r(y) else zero
    if ka == "g" and kb == "e":
        return [(1, (("v", g.r(x)),))] if x == y else zero
    # edge followed by ghost
    if g.r(x) != g.r(y):
        return zero
    v = g.s(x)
    if x == y and ctx.special_edge.get(v) == x:
        out = [(1, (("v", v),))]
        out += [(-1, (("e", e), ("g", e))) for e in g.out_edges(v) if e != x]
        return out
    return None


def redexes(ctx: AlgebraContext, w: Word) -> list[int]:
    return [i for i in range(len(w) - 1) if _rewrite_pair(ctx, w[i], w[i + 1]) is not None]


def word_to_monomial(ctx: AlgebraContext, w: Word) -> Monomial:
    g = ctx.graph
    if len(w) == 1 and w[0][0] == "v":
        p = Path.vertex(w[0][1])
        return Monomial(p, p)
    alpha = tuple(name for k, name in w if k == "e")
    beta = tuple(name for k, name in reversed(w) if k == "g")
    mid = g.r(alpha[-1]) if alpha else g.r(beta[-1])
    a = Path(g.s(alpha[0]), mid, alpha) if alpha else Path.vertex(mid)
    b = Path(g.s(beta[0]), mid, beta) if beta else Path.vertex(mid)
    return Monomial(a, b)


def reduce_words(ctx: AlgebraContext, combo: Combo, choose: Chooser | None = None) -> Element:
    """Rewrite until no rule applies.

    ``choose`` picks an item from a sequence; it selects both the next
    pending word and the redex position inside it.
    """
    f = ctx.field
    choose = choose or (lambda seq: seq[0])
    live: dict[Word, Scalar] = dict(combo)
    pending = [w for w in live if redexes(ctx, w)]
    pending_set = set(pending)
    done: dict[Word, Scalar] = defaultdict(lambda: f.zero)
    for w in list(live):
        if w not in pending_set:
            done[w] += live.pop(w)
    while pending:
        idx = choose(range(len(pending)))
        w = pending[idx]
        pending[idx] = pending[-1]
        pending.pop()
        pending_set.discard(w)
        c = live.pop(w)
        if not c:
            continue
        pos = choose(redexes(ctx, w))
        for k, repl in _rewrite_pair(ctx, w[pos], w[pos + 1]):
            nw = w[:pos] + repl + w[pos + 2 :]
            if redexes(ctx, nw):
                live[nw] = live.get(nw, f.zero) + c * k
                if nw not in pending_set:
                    pending_set.add(nw)
                    pending.append(nw)
            else:
                done[nw] += c * k
    terms: dict[Monomial, Scalar] = {}
    for w, c in done.items():
        if c:
            m = word_to_monomial(ctx, w)
            terms[m] = terms.get(m, f.zero) + c
    return Element(ctx, {m: c for m, c in terms.items() if c})


def normal_form_randomized(raw: Node, ctx: AlgebraContext, rng: random.Random) -> Element:
    """Normal form reached by rewriting in an order drawn from ``rng``."""
    return reduce_words(ctx, expand(raw, ctx), choose=rng.choice)
