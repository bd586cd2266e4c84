"""Heap posets of fully commutative elements, the n-value, and the two
special families of elements (zigzags and alternating stacks).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Word,
    _reach_above,
    _reach_below,
    _rows_of,
    canonical_form,
    identity,
    is_fc_reduced,
)


@dataclass(frozen=True)
class Heap:
    """The heap poset of an fc element.

    ``entries`` lists (index, generator label, row) with 1-based indices in
    canonical word order; ``covers`` holds pairs (below, above) of entry
    indices for the covering relation.
    """

    entries: tuple[tuple[int, int, int], ...]
    covers: frozenset[tuple[int, int]]

    def comparable(self, a: int, b: int) -> bool:
        lo, hi = min(a, b), max(a, b)
        seen = {hi}
        frontier = [hi]
        while frontier:
            x = frontier.pop()
            for below, above in self.covers:
                if above == x and below not in seen:
                    seen.add(below)
                    frontier.append(below)
        return lo in seen and lo != hi


def build_heap(e: FcElement) -> Heap:
    """Covering relations of the heap poset (earlier letters sit above)."""
    g, word = e.graph, e.word
    below = _reach_below(g, word)
    above = _reach_above(g, word)
    entries = []
    idx = 0
    for r, row in enumerate(e.rows, start=1):
        for label in row:
            idx += 1
            entries.append((idx, label, r))
    covers = set()
    L = len(word)
    for p in range(L):
        for q in range(p + 1, L):
            if not (below[p] >> q) & 1:
                continue
            if below[p] & above[q]:
                continue
            covers.add((q + 1, p + 1))
    return Heap(tuple(entries), frozenset(covers))


def _max_antichain(g: CoxeterGraph, word: Word) -> int:
    """Maximum antichain size of the heap poset, via Dilworth's theorem:
    it equals len - (maximum matching of the strict comparability DAG)."""
    L = len(word)
    below = _reach_below(g, word)
    match_to: list[int | None] = [None] * L

    def augment(u: int, seen: list[bool]) -> bool:
        for v in range(L):
            if (below[u] >> v) & 1 and not seen[v]:
                seen[v] = True
                if match_to[v] is None or augment(match_to[v], seen):
                    match_to[v] = u
                    return True
        return False

    matching = 0
    for u in range(L):
        if augment(u, [False] * L):
            matching += 1
    return L - matching


def n_value(e: FcElement) -> int:
    """Largest set of pairwise commuting letters in any reduced factorization,
    computed as the maximum antichain of the heap poset."""
    if e.is_identity:
        raise ValueError("n-value is undefined for the identity")
    return _max_antichain(e.graph, e.word)


# --- Zigzag (type I) elements ---------------------------------------------


class TypeIFamily(Enum):
    Z_IJ = "z"
    Z_L_EVEN = "zL_even"
    Z_L_ODD = "zL_odd"
    Z_R_EVEN = "zR_even"
    Z_R_ODD = "zR_odd"
    # Length-3 bounces at the generator next to a bond-4 end (s1 s2 s1 and
    # its mirror).  These have chain heaps but fall outside the five
    # parameterized families.
    Z_BOUNCE_L = "zBounce_left"
    Z_BOUNCE_R = "zBounce_right"


@dataclass(frozen=True)
class TypeIDescriptor:
    family: TypeIFamily
    i: int
    j: int
    k: int = 0


def _path(i: int, j: int) -> list[int]:
    """The word s_i s_{i +- 1} ... s_j stepping by one."""
    step = 1 if j >= i else -1
    return list(range(i, j + step, step))


def type_i_word(g: CoxeterGraph, desc: TypeIDescriptor) -> Word:
    if g.kind not in (GraphKind.CAFFINE, GraphKind.B, GraphKind.BPRIME):
        raise ValueError("zigzag families live in the affine C chain")
    n = g.n
    fam, i, j, k = desc.family, desc.i, desc.j, desc.k
    lo, hi = min(g.generators), max(g.generators)

    if fam is TypeIFamily.Z_IJ:
        if not (lo <= i <= hi and lo <= j <= hi):
            raise ValueError(f"indices ({i},{j}) out of range")
        return tuple(_path(i, j))
    if fam is TypeIFamily.Z_BOUNCE_L:
        if g.kind is GraphKind.BPRIME or (i, j) != (1, 1):
            raise ValueError("left bounce needs the bond-4 edge at 1,2 and i=j=1")
        return (1, 2, 1)
    if fam is TypeIFamily.Z_BOUNCE_R:
        if g.kind is GraphKind.B or (i, j) != (n + 1, n + 1):
            raise ValueError("right bounce needs the bond-4 edge at n,n+1 and i=j=n+1")
        return (n + 1, n, n + 1)

    if g.kind is not GraphKind.CAFFINE:
        raise ValueError("zigzag L/R families need both end bonds")
    if fam is TypeIFamily.Z_L_EVEN:
        if not (1 < i <= n + 1 and 1 < j <= n + 1 and k >= 1):
            raise ValueError(f"bad Z_L_even parameters ({i},{j},{k})")
        word = _path(i, 2) + (_path(1, n) + _path(n + 1, 2)) * (k - 1) + _path(1, n) + _path(n + 1, j)
    elif fam is TypeIFamily.Z_L_ODD:
        if not (1 < i <= n + 1 and 1 <= j < n + 1 and k >= 0):
            raise ValueError(f"bad Z_L_odd parameters ({i},{j},{k})")
        word = _path(i, 2) + (_path(1, n) + _path(n + 1, 2)) * k + _path(1, j)
    elif fam is TypeIFamily.Z_R_EVEN:
        if not (1 <= i < n + 1 and 1 <= j < n + 1 and k >= 1):
            raise ValueError(f"bad Z_R_even parameters ({i},{j},{k})")
        word = _path(i, n) + (_path(n + 1, 2) + _path(1, n)) * (k - 1) + _path(n + 1, 2) + _path(1, j)
    else:
        if not (1 <= i < n + 1 and 1 < j <= n + 1 and k >= 0):
            raise ValueError(f"bad Z_R_odd parameters ({i},{j},{k})")
        word = _path(i, n) + (_path(n + 1, 2) + _path(1, n)) * k + _path(n + 1, j)
    return tuple(word)


def make_type_I(g: CoxeterGraph, desc: TypeIDescriptor) -> FcElement:
    word = type_i_word(g, desc)
    e = canonical_form(g, word)
    assert e.word == word, "zigzag words are rigid"
    return e


def is_type_I(e: FcElement) -> Optional[TypeIDescriptor]:
    """The canonical zigzag descriptor of e, if its n-value is 1.

    Monotone paths parse as Z_IJ even when a degenerate L/R parameter choice
    would produce the same word.
    """
    if e.is_identity:
        return None
    if n_value(e) != 1:
        return None
    g, word = e.graph, e.word
    if len(word) == 1:
        return TypeIDescriptor(TypeIFamily.Z_IJ, word[0], word[0])

    if word == (1, 2, 1):
        return TypeIDescriptor(TypeIFamily.Z_BOUNCE_L, 1, 1)
    if word == (g.n + 1, g.n, g.n + 1):
        return TypeIDescriptor(TypeIFamily.Z_BOUNCE_R, g.n + 1, g.n + 1)

    ends = set()
    if g.kind in (GraphKind.CAFFINE, GraphKind.B):
        ends.add(1)
    if g.kind in (GraphKind.CAFFINE, GraphKind.BPRIME):
        ends.add(g.n + 1)
    steps = [word[p + 1] - word[p] for p in range(len(word) - 1)]
    if any(abs(s) != 1 for s in steps):
        return None
    for p in range(len(steps) - 1):
        if steps[p] != steps[p + 1] and word[p + 1] not in ends:
            return None

    if all(s == steps[0] for s in steps):
        return TypeIDescriptor(TypeIFamily.Z_IJ, word[0], word[-1])
    end_count = sum(1 for letter in word[1:] if letter in (1, g.n + 1))
    side_L = steps[0] == -1
    if end_count % 2 == 0:
        k = end_count // 2
        fam = TypeIFamily.Z_L_EVEN if side_L else TypeIFamily.Z_R_EVEN
    else:
        k = (end_count - 1) // 2
        fam = TypeIFamily.Z_L_ODD if side_L else TypeIFamily.Z_R_ODD
    return TypeIDescriptor(fam, word[0], word[-1], k)


# --- Alternating-stack (type II) elements ----------------------------------


class TypeIIForm(Enum):
    X_ODD = "xO"
    X_EVEN = "xE"
    Y_K = "y_k"
    XE_Y_K = "xE_y_k"
    XE_Y_K_XO = "xE_y_k_xO"
    Y_K_XO = "y_k_xO"


@dataclass(frozen=True)
class TypeIIDescriptor:
    form: TypeIIForm
    k: int = 0


def odd_indices(g: CoxeterGraph) -> tuple[int, ...]:
    return tuple(i for i in range(1, g.n + 2) if i % 2 == 1)


def even_indices(g: CoxeterGraph) -> tuple[int, ...]:
    return tuple(i for i in range(1, g.n + 2) if i % 2 == 0)


def type_ii_word(g: CoxeterGraph, desc: TypeIIDescriptor) -> Word:
    if g.kind is not GraphKind.CAFFINE:
        raise ValueError("alternating stacks are affine C elements")
    xo, xe = odd_indices(g), even_indices(g)
    form, k = desc.form, desc.k
    if form in (TypeIIForm.Y_K, TypeIIForm.XE_Y_K, TypeIIForm.Y_K_XO) and k < 1:
        raise ValueError("k must be positive")
    if form is TypeIIForm.XE_Y_K_XO and k < 0:
        # k = 0 is the bare alternating product of the even and odd sets.
        raise ValueError("k must be nonnegative")
    if form is TypeIIForm.X_ODD:
        return xo
    if form is TypeIIForm.X_EVEN:
        return xe
    if form is TypeIIForm.Y_K:
        return (xo + xe) * k
    if form is TypeIIForm.XE_Y_K:
        return xe + (xo + xe) * k
    if form is TypeIIForm.XE_Y_K_XO:
        return xe + (xo + xe) * k + xo
    return (xo + xe) * k + xo


_ROW_COUNTS = {
    TypeIIForm.Y_K: lambda k: 2 * k,
    TypeIIForm.XE_Y_K: lambda k: 2 * k + 1,
    TypeIIForm.XE_Y_K_XO: lambda k: 2 * k + 2,
    TypeIIForm.Y_K_XO: lambda k: 2 * k + 1,
    TypeIIForm.X_ODD: lambda k: 1,
    TypeIIForm.X_EVEN: lambda k: 1,
}


def make_type_II(g: CoxeterGraph, desc: TypeIIDescriptor) -> FcElement:
    word = type_ii_word(g, desc)
    e = canonical_form(g, word)
    assert len(e.rows) == _ROW_COUNTS[desc.form](desc.k)
    return e


def is_type_II(e: FcElement) -> Optional[TypeIIDescriptor]:
    """Descriptor if the canonical rows alternate between the full odd and
    full even index sets."""
    g = e.graph
    if g.kind is not GraphKind.CAFFINE or e.is_identity:
        return None
    xo, xe = odd_indices(g), even_indices(g)
    pattern = []
    for row in e.rows:
        if row == xo:
            pattern.append("O")
        elif row == xe:
            pattern.append("E")
        else:
            return None
    if any(pattern[p] == pattern[p + 1] for p in range(len(pattern) - 1)):
        return None
    m = len(pattern)
    first, last = pattern[0], pattern[-1]
    if m == 1:
        return TypeIIDescriptor(TypeIIForm.X_ODD if first == "O" else TypeIIForm.X_EVEN)
    if first == "O" and last == "E":
        return TypeIIDescriptor(TypeIIForm.Y_K, m // 2)
    if first == "E" and last == "E":
        return TypeIIDescriptor(TypeIIForm.XE_Y_K, (m - 1) // 2)
    if first == "E" and last == "O":
        return TypeIIDescriptor(TypeIIForm.XE_Y_K_XO, (m - 2) // 2)
    return TypeIIDescriptor(TypeIIForm.Y_K_XO, (m - 1) // 2)


def paper_type_ii_n_value(g: CoxeterGraph) -> int:
    """The n-value the source text asserts for alternating stacks; the
    computed antichain value is len(odd_indices) = this + 1."""
    return (g.n - 1 + 1) // 2


def render_heap(e: FcElement) -> str:
    """Monospace lattice rendering: column i at character column 2i, one text
    row per heap row.  Identity renders as the empty string."""
    if e.is_identity:
        return ""
    lines = []
    for row in e.rows:
        width = 2 * max(row) + len(str(max(row)))
        chars = [" "] * width
        for label in row:
            text = str(label)
            for off, ch in enumerate(text):
                chars[2 * label + off] = ch
        lines.append("".join(chars).rstrip())
    return "\n".join(lines)
