"""The Temperley-Lieb algebra on the monomial basis over Z[delta].

Products of generators normalize to 2^k * delta^m * b_w with w fully
commutative; the case analysis follows the three possibilities for s*w
(reduced and fc, s a descent, or reduced but not fc, in which case a braid
factor is absorbed and the product recurses on shorter elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import (
    CoxeterGraph,
    FcElement,
    Side,
    Word,
    canonical_form,
    format_word,
    identity,
    is_fc_reduced,
)
from .starops import StarMove, apply_weak_star


@dataclass(frozen=True)
class DeltaPoly:
    """Integer polynomial in delta, stored as sorted (exponent, coeff) pairs."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "DeltaPoly":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> "DeltaPoly":
        return cls.from_dict({exp: coeff})

    @classmethod
    def one(cls) -> "DeltaPoly":
        return cls.monomial(1, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DeltaPoly") -> "DeltaPoly":
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return DeltaPoly.from_dict(d)

    def __mul__(self, other: "DeltaPoly") -> "DeltaPoly":
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return DeltaPoly.from_dict(d)

    def scaled(self, coeff: int, exp: int = 0) -> "DeltaPoly":
        return self * DeltaPoly.monomial(coeff, exp)

    def text(self) -> str:
        """Polynomial text like "3d^2+1"; zero prints as "0"."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                head = "" if abs(c) == 1 else str(abs(c))
                body = f"{head}d" if e == 1 else f"{head}d^{e}"
            parts.append(("-" if c < 0 else "+", body))
        sign, first = parts[0]
        text = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += sign + body
        return text


@dataclass(frozen=True)
class TLMonomial:
    """A scalar monomial 2^two_exp * delta^delta_exp * b_element."""

    two_exp: int
    delta_exp: int
    element: FcElement

    def __post_init__(self):
        if self.two_exp < 0 or self.delta_exp < 0:
            raise ValueError("negative exponent")

    def coeff(self) -> DeltaPoly:
        return DeltaPoly.monomial(2**self.two_exp, self.delta_exp)

    def text(self) -> str:
        word = format_word(self.element.word) if not self.element.is_identity else "e"
        scalar = []
        if self.two_exp:
            scalar.append(str(2**self.two_exp))
        if self.delta_exp:
            scalar.append("d" if self.delta_exp == 1 else f"d^{self.delta_exp}")
        head = " * ".join(scalar)
        return f"{head} * b[{word}]" if head else f"b[{word}]"


def _left_mult(i: int, two: int, delta: int, e: FcElement) -> TLMonomial:
    """Multiply b_i onto 2^two * delta^delta * b_e from the left."""
    g = e.graph
    word = e.word
    extended = (i,) + word
    if is_fc_reduced(g, extended):
        return TLMonomial(two, delta, canonical_form(g, extended))
    if i in e.left_descents():
        return TLMonomial(two, delta + 1, e)

    # s*w is reduced but not fully commutative: locate the braid.  The first
    # letter of the canonical word not commuting with s is the t of the
    # unique forbidden chain; everything before it commutes with s.
    pos = next(p for p, letter in enumerate(word) if g.bond(i, letter) >= 3)
    t = word[pos]
    prefix = word[:pos]
    rest = list(word[pos + 1 :])
    first_s = rest.index(i)
    del rest[first_s]
    if g.bond(i, t) == 3:
        # b_s b_t b_s = b_s inside u (sts) v.
        tail = tuple(rest)
        acc = TLMonomial(two, delta, canonical_form(g, tail))
        acc = _left_mult(i, acc.two_exp, acc.delta_exp, acc.element)
    else:
        # b_s b_t b_s b_t = 2 b_s b_t inside u (stst) v.
        first_t = rest.index(t)
        del rest[first_t]
        tail = tuple(rest)
        acc = TLMonomial(two + 1, delta, canonical_form(g, tail))
        acc = _left_mult(t, acc.two_exp, acc.delta_exp, acc.element)
        acc = _left_mult(i, acc.two_exp, acc.delta_exp, acc.element)
    for letter in reversed(prefix):
        acc = _left_mult(letter, acc.two_exp, acc.delta_exp, acc.element)
    return acc


def mult_generator(side: Side, i: int, m: TLMonomial) -> TLMonomial:
    """Multiply the generator monomial b_i onto m on the given side."""
    g = m.element.graph
    g.check_generator(i)
    if side is Side.LEFT:
        return _left_mult(i, m.two_exp, m.delta_exp, m.element)
    flipped = _left_mult(i, m.two_exp, m.delta_exp, m.element.reversed())
    return TLMonomial(flipped.two_exp, flipped.delta_exp, flipped.element.reversed())


def monomial(e: FcElement) -> TLMonomial:
    return TLMonomial(0, 0, e)


def normalize_word(g: CoxeterGraph, gens: Sequence[int]) -> TLMonomial:
    """Normal form 2^k delta^m b_w of the product b_{i1} ... b_{ip}."""
    acc = TLMonomial(0, 0, identity(g))
    for i in gens:
        acc = mult_generator(Side.RIGHT, i, acc)
    return acc


@dataclass(frozen=True)
class TLElement:
    """A finite Z[delta]-linear combination of monomial basis elements."""

    graph: CoxeterGraph
    terms: tuple[tuple[FcElement, DeltaPoly], ...]

    @classmethod
    def from_dict(cls, g: CoxeterGraph, d: dict[FcElement, DeltaPoly]) -> "TLElement":
        items = [(e, p) for e, p in d.items() if not p.is_zero()]
        items.sort(key=lambda ep: ep[0].sort_key())
        return cls(g, tuple(items))

    @classmethod
    def from_monomial(cls, m: TLMonomial) -> "TLElement":
        return cls.from_dict(m.element.graph, {m.element: m.coeff()})

    @classmethod
    def basis(cls, e: FcElement) -> "TLElement":
        return cls.from_dict(e.graph, {e: DeltaPoly.one()})

    @classmethod
    def unit(cls, g: CoxeterGraph) -> "TLElement":
        return cls.basis(identity(g))

    def as_dict(self) -> dict[FcElement, DeltaPoly]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TLElement") -> "TLElement":
        if self.graph != other.graph:
            raise ValueError("mismatched graphs")
        d = self.as_dict()
        for e, p in other.terms:
            d[e] = d.get(e, DeltaPoly()) + p
        return TLElement.from_dict(self.graph, d)

    def scaled(self, poly: DeltaPoly) -> "TLElement":
        return TLElement.from_dict(self.graph, {e: p * poly for e, p in self.terms})

    def text(self) -> str:
        """Terms "coeff-poly * word" joined by " + ", longest last."""
        if not self.terms:
            return "0"
        parts = []
        for e, poly in self.terms:
            word = format_word(e.word) if not e.is_identity else "e"
            head = "" if poly == DeltaPoly.one() else f"{poly.text()} * "
            parts.append(f"{head}b[{word}]")
        return " + ".join(parts)


def tl_multiply(a: TLElement, b: TLElement) -> TLElement:
    """Bilinear extension of monomial products."""
    if a.graph != b.graph:
        raise ValueError("mismatched graphs")
    out: dict[FcElement, DeltaPoly] = {}
    for e1, p1 in a.terms:
        for e2, p2 in b.terms:
            prod = normalize_word(a.graph, e1.word + e2.word)
            coeff = p1 * p2 * prod.coeff()
            key = prod.element
            out[key] = out.get(key, DeltaPoly()) + coeff
    return TLElement.from_dict(a.graph, out)


def weak_star_reverse_check(e: FcElement, move: StarMove) -> bool:
    """Verify b_s b_t b_w = b_w (bond 3) or 2 b_w (bond 4) for a defined
    weak star move on w."""
    if apply_weak_star(e, move) is None:
        raise ValueError("move is not defined on this element")
    bond = e.graph.bond(move.s, move.t)
    acc = monomial(e)
    acc = mult_generator(move.side, move.t, acc)
    acc = mult_generator(move.side, move.s, acc)
    expected_two = 1 if bond == 4 else 0
    return acc == TLMonomial(expected_two, 0, e)
