"""Expression language for algebra elements.

    element := term (("+"|"-") term)*
    term    := scalar? factor+
    factor  := ident ghost? | "(" element ")" ghost?
    ghost   := "*"
    scalar  := integer ("/" positive-integer)?

Juxtaposition is multiplication and a postfix ``*`` applies the involution.
A leading sign on the first term is accepted, as is the bare scalar ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from ..errors import IdentifierError, ParseError
from .element import AlgebraContext, Element

_SCALAR = re.compile(r"^(\d+)(?:/(\d+))?$")


class UnknownIdentifierError(ParseError, IdentifierError):
    pass


@dataclass(frozen=True)
class Gen:
    kind: str  # "vertex" | "edge" | "ghost"
    name: str


@dataclass(frozen=True)
class Scaled:
    scalar: Fraction
    body: "Node"


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]  # (sign, term)


@dataclass(frozen=True)
class Star:
    body: "Node"


@dataclass(frozen=True)
class Zero:
    pass


Node = Union[Gen, Scaled, Product, Sum, Star, Zero]


@dataclass(frozen=True)
class _Tok:
    kind: str  # "(", ")", "+", "-", "*", "scalar", "ident", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()+-*":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()+-*":
                j += 1
            word = text[i:j]
            if word[0].isdigit() and _SCALAR.match(word):
                toks.append(_Tok("scalar", word, i))
            elif word[0].isdigit() or not word.isascii():
                raise ParseError(f"malformed token {word!r}", i)
            else:
                toks.append(_Tok("ident", word, i))
            i = j
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: AlgebraContext):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, what: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"{what}, found {found}", t.pos)

    def element(self) -> Node:
        terms = []
        sign = 1
        if self.tok.kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        terms.append((sign, self.term()))
        while self.tok.kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        scalar = None
        if self.tok.kind == "scalar":
            t = self.take()
            m = _SCALAR.match(t.text)
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise ParseError("zero denominator", t.pos)
            scalar = Fraction(num, den)
        factors = []
        while self.tok.kind in ("ident", "("):
            factors.append(self.factor())
        if not factors:
            if scalar == 0:
                return Zero()
            self.fail("expected a generator or '('")
        body = factors[0] if len(factors) == 1 else Product(tuple(factors))
        return body if scalar is None else Scaled(scalar, body)

    def factor(self) -> Node:
        t = self.take()
        if t.kind == "ident":
            node = self.resolve(t)
            if self.tok.kind == "*":
                self.take()
                node = Gen("ghost", node.name) if node.kind == "edge" else node
            return node
        node = self.element()
        if self.tok.kind != ")":
            self.fail("expected ')'")
        self.take()
        if self.tok.kind == "*":
            self.take()
            node = Star(node)
        return node

    def resolve(self, t: _Tok) -> Gen:
        g = self.ctx.graph
        if g.has_vertex(t.text):
            return Gen("vertex", t.text)
        if g.has_edge(t.text):
            return Gen("edge", t.text)
        raise UnknownIdentifierError(f"unknown identifier {t.text!r}", t.pos)

    def parse(self) -> Node:
        node = self.element()
        if self.tok.kind != "end":
            self.fail("unexpected token")
        return node


def parse_expression(text: str, ctx: AlgebraContext) -> Node:
    """Parse ``text`` into a raw expression tree over ``ctx``'s generators."""
    return _Parser(text, ctx).parse()


def normal_form(raw: Node, ctx: AlgebraContext) -> Element:
    """Evaluate a raw tree into its canonical :class:`Element`."""
    if isinstance(raw, Gen):
        return {"vertex": ctx.vertex, "edge": ctx.edge, "ghost": ctx.ghost}[raw.kind](raw.name)
    if isinstance(raw, Zero):
        return ctx.zero()
    if isinstance(raw, Scaled):
        return normal_form(raw.body, ctx).scale(raw.scalar)
    if isinstance(raw, Star):
        return normal_form(raw.body, ctx).star()
    if isinstance(raw, Product):
        out = normal_form(raw.factors[0], ctx)
        for f in raw.factors[1:]:
            out = out * normal_form(f, ctx)
        return out
    if isinstance(raw, Sum):
        out = ctx.zero()
        for sign, t in raw.terms:
            out = out + normal_form(t, ctx) if sign > 0 else out - normal_form(t, ctx)
        return out
    raise TypeError(f"not an expression node: {raw!r}")


def evaluate_text(text: str, ctx: AlgebraContext) -> Element:
    return normal_form(parse_expression(text, ctx), ctx)


def render(raw: Node) -> str:
    """Re-serialize a tree in the expression language."""
    if isinstance(raw, Gen):
        return f"{raw.name}*" if raw.kind == "ghost" else raw.name
    if isinstance(raw, Zero):
        return "0"
    if isinstance(raw, Scaled):
        s = raw.scalar
        text = str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
        return f"{text} ({render(raw.body)})"
    if isinstance(raw, Star):
        return f"({render(raw.body)})*"
    if isinstance(raw, Product):
        return " ".join(f"({render(f)})" if isinstance(f, (Sum, Scaled)) else render(f) for f in raw.factors)
    if isinstance(raw, Sum):
        out = []
        for i, (sign, t) in enumerate(raw.terms):
            body = f"({render(t)})" if isinstance(t, Sum) else render(t)
            out.append(("- " if sign < 0 else ("+ " if i else "")) + body)
        return " ".join(out)
    raise TypeError(f"not an expression node: {raw!r}")


def iter_generators(raw: Node) -> Iterator[Gen]:
    if isinstance(raw, Gen):
        yield raw
    elif isinstance(raw, (Scaled, Star)):
        yield from iter_generators(raw.body)
    elif isinstance(raw, Product):
        for f in raw.factors:
            yield from iter_generators(f)
    elif isinstance(raw, Sum):
        for _, t in raw.terms:
            yield from iter_generators(t)
