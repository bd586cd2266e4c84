"""Star and weak star reductions on fully commutative elements, and the
classified irreducible sets used as oracles.

"Irreducible" always means weak star irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Side,
    Word,
    canonical_form,
    identity,
    is_fc_reduced,
)
from .heap import TypeIDescriptor, TypeIFamily, TypeIIDescriptor, TypeIIForm, type_i_word, type_ii_word


@dataclass(frozen=True)
class StarMove:
    side: Side
    s: int
    t: int
    weak: bool = True

    def text(self) -> str:
        kind = "weak" if self.weak else "star"
        return f"{self.side.value} s={self.s} t={self.t} {kind}"


@dataclass(frozen=True)
class ReductionTrace:
    start: FcElement
    moves: tuple[StarMove, ...]
    end: FcElement

    def text(self) -> str:
        return "\n".join(m.text() for m in self.moves)


def _oriented_word(e: FcElement, side: Side) -> Word:
    return e.word if side is Side.LEFT else e.word[::-1]


def _from_oriented(g: CoxeterGraph, word: Word, side: Side) -> FcElement:
    return canonical_form(g, word if side is Side.LEFT else word[::-1])


def _drop_descent(word: Word, s: int) -> Word:
    """Remove the first letter equal to s; valid when s is a left descent of
    the word's element."""
    p = word.index(s)
    return word[:p] + word[p + 1 :]


def apply_star(e: FcElement, move: StarMove) -> Optional[FcElement]:
    """Plain star reduction: defined iff s is a descent on the given side and
    t is a descent of the shortened element, with m(s,t) >= 3."""
    g = e.graph
    if move.s not in g.generators or move.t not in g.generators or g.bond(move.s, move.t) < 3:
        return None
    word = _oriented_word(e, move.side)
    head = canonical_form(g, word)
    if move.s not in head.left_descents():
        return None
    reduced_word = _drop_descent(head.word, move.s)
    reduced = canonical_form(g, reduced_word)
    if move.t not in reduced.left_descents():
        return None
    return _from_oriented(g, reduced.word, move.side)


def apply_weak_star(e: FcElement, move: StarMove) -> Optional[FcElement]:
    """Weak star reduction: the star reduction must apply and prepending
    (resp. appending) t must leave the fully commutative world."""
    if not move.weak:
        raise ValueError("apply_weak_star needs a weak move")
    g = e.graph
    plain = apply_star(e, StarMove(move.side, move.s, move.t, weak=False))
    if plain is None:
        return None
    word = _oriented_word(e, move.side)
    if is_fc_reduced(g, (move.t,) + word):
        return None
    return plain


def _candidate_moves(e: FcElement, weak: bool) -> Iterable[StarMove]:
    g = e.graph
    for side in (Side.LEFT, Side.RIGHT):
        for s in sorted(g.generators):
            for t in g.neighbors(s):
                yield StarMove(side, s, t, weak)


def is_irreducible(e: FcElement) -> bool:
    return all(apply_weak_star(e, m) is None for m in _candidate_moves(e, weak=True))


def reduce_to_irreducible(e: FcElement) -> ReductionTrace:
    """Greedy reduction with a deterministic move policy: the first defined
    move in (side: L before R, then s, then t) order at each step."""
    moves: list[StarMove] = []
    current = e
    while True:
        for move in _candidate_moves(current, weak=True):
            nxt = apply_weak_star(current, move)
            if nxt is not None:
                moves.append(move)
                current = nxt
                break
        else:
            return ReductionTrace(e, tuple(moves), current)


# --- Classified irreducible sets -------------------------------------------


def _commuting_products(letters: Iterable[int]) -> list[Word]:
    """All products of pairwise distant generators from ``letters``, as
    ascending words (the identity included)."""
    letters = sorted(letters)
    out: list[Word] = [()]
    for letter in letters:
        out.extend(word + (letter,) for word in list(out) if not word or word[-1] < letter - 1)
    return out


def _b_irreducible_words(lo: int, hi: int, end: int, inward: int) -> list[Word]:
    """Irreducible words of a type-B-style chain with its bond-4 end at
    ``end`` and second generator ``inward``, supported in [lo, hi].

    The list is: commuting products w_p, plus (end, inward) w_p and
    (inward, end) w_p where the three generators nearest the bond-4 end are
    excluded from supp(w_p).
    """
    if hi < lo:
        return [()]
    words = list(_commuting_products(range(lo, hi + 1)))
    third = 2 * inward - end
    if lo <= end <= hi and lo <= inward <= hi:
        far = [i for i in range(lo, hi + 1) if i not in (end, inward, third)]
        for wp in _commuting_products(far):
            words.append((end, inward) + wp)
            words.append((inward, end) + wp)
    return words


def classified_irreducibles(g: CoxeterGraph, max_len: int) -> list[FcElement]:
    """The irreducible elements predicted by the classification theorems,
    generated (not filtered), up to the length bound."""
    n = g.n
    words: set[Word] = set()

    if g.kind is GraphKind.B:
        words.update(_b_irreducible_words(1, n, end=1, inward=2))
    elif g.kind is GraphKind.BPRIME:
        words.update(_b_irreducible_words(2, n + 1, end=n + 1, inward=n))
    elif g.kind is GraphKind.CAFFINE:
        # (i) products u * v split at a missing generator: supp(u) in [1, j],
        # supp(v) in [j+2, n+1].
        for j in range(0, n + 2):
            left = _b_irreducible_words(1, j, end=1, inward=2)
            right = _b_irreducible_words(j + 2, n + 1, end=n + 1, inward=n)
            for u, v in itertools.product(left, right):
                if len(u) + len(v) <= max_len:
                    words.add(u + v)
        # (ii) the four irreducible zigzag families.
        for fam, i, j, k0 in (
            (TypeIFamily.Z_R_EVEN, 1, 1, 1),
            (TypeIFamily.Z_L_EVEN, n + 1, n + 1, 1),
            (TypeIFamily.Z_L_ODD, n + 1, 1, 0),
            (TypeIFamily.Z_R_ODD, 1, n + 1, 0),
        ):
            k = k0
            while True:
                word = type_i_word(g, TypeIDescriptor(fam, i, j, k))
                if len(word) > max_len:
                    break
                words.add(word)
                k += 1
        # (iii) every alternating stack.
        for form in (TypeIIForm.X_ODD, TypeIIForm.X_EVEN):
            word = type_ii_word(g, TypeIIDescriptor(form))
            if len(word) <= max_len:
                words.add(word)
        for form in (TypeIIForm.Y_K, TypeIIForm.XE_Y_K, TypeIIForm.XE_Y_K_XO, TypeIIForm.Y_K_XO):
            k = 0 if form is TypeIIForm.XE_Y_K_XO else 1
            while True:
                word = type_ii_word(g, TypeIIDescriptor(form, k))
                if len(word) > max_len:
                    break
                words.add(word)
                k += 1
    else:
        raise ValueError("classification covers kinds b, bprime and caffine")

    elements = {canonical_form(g, w) for w in words if len(w) <= max_len}
    return sorted(elements, key=FcElement.sort_key)
