"""Coxeter graphs of types A, B, B' and affine C, and their fully
commutative elements in Cartier-Foata normal form.

Only fully commutative elements get a first-class representation: an
``FcElement`` stores the row decomposition of the canonical heap, which is a
complete invariant of the commutation class.  General group arithmetic in
the affine group is deliberately absent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]


class GraphKind(Enum):
    A = "a"
    B = "b"
    BPRIME = "bprime"
    CAFFINE = "caffine"


@dataclass(frozen=True)
class CoxeterGraph:
    """A Coxeter graph on a chain of generators.

    ``n`` is the rank parameter: affine C_n has generators s_1..s_{n+1} with
    bond 4 at both ends, B_n keeps s_1..s_n, B'_n keeps s_2..s_{n+1}, and A_n
    is the simply laced chain s_1..s_n.
    """

    kind: GraphKind
    n: int

    def __post_init__(self):
        least = 1 if self.kind is GraphKind.A else 2
        if self.n < least:
            raise ValueError(f"rank {self.n} too small for kind {self.kind.value}")

    @property
    def generators(self) -> range:
        if self.kind is GraphKind.BPRIME:
            return range(2, self.n + 2)
        if self.kind is GraphKind.CAFFINE:
            return range(1, self.n + 2)
        return range(1, self.n + 1)

    def check_generator(self, i: int) -> None:
        if i not in self.generators:
            raise ValueError(f"generator index {i} out of range for {self.describe()}")

    def bond(self, i: int, j: int) -> int:
        """The Coxeter bond m(s_i, s_j)."""
        self.check_generator(i)
        self.check_generator(j)
        if i == j:
            return 1
        if abs(i - j) > 1:
            return 2
        if self.kind is GraphKind.A:
            return 3
        lo = min(i, j)
        if lo == 1 or lo == self.n:
            return 4
        return 3

    def commutes(self, i: int, j: int) -> bool:
        return i != j and abs(i - j) > 1

    def neighbors(self, i: int) -> list[int]:
        """Generators adjacent to s_i in the graph (bond >= 3)."""
        return [j for j in (i - 1, i + 1) if j in self.generators]

    def describe(self) -> str:
        return f"{self.kind.value}{self.n}"


def graph(kind: str, n: int) -> CoxeterGraph:
    return CoxeterGraph(GraphKind(kind), n)


def parse_word(text: str) -> Word:
    """Parse the whitespace-separated 1-based word format, e.g. "1 3 2 1"."""
    try:
        return tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ValueError(f"bad word {text!r}: {exc}") from None


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(i) for i in word)


def _check_word(g: CoxeterGraph, word: Sequence[int]) -> None:
    for i in word:
        g.check_generator(i)


def _reach_below(g: CoxeterGraph, word: Sequence[int]) -> list[int]:
    """For each position p, the bitmask of positions strictly below p in the
    heap poset (later in the word and linked by non-commutation)."""
    L = len(word)
    below = [0] * L
    for p in range(L - 1, -1, -1):
        acc = 0
        for q in range(p + 1, L):
            if not g.commutes(word[p], word[q]):
                acc |= (1 << q) | below[q]
        below[p] = acc
    return below


def _reach_above(g: CoxeterGraph, word: Sequence[int]) -> list[int]:
    L = len(word)
    above = [0] * L
    for p in range(L):
        acc = 0
        for q in range(p):
            if not g.commutes(word[p], word[q]):
                acc |= (1 << q) | above[q]
        above[p] = acc
    return above


def is_fc_reduced(g: CoxeterGraph, word: Sequence[int]) -> bool:
    """True iff ``word`` is a reduced expression of a fully commutative element.

    Checks that the heap of the word contains no convex chain with labels
    s s (the word would not be reduced), s t s with m(s,t)=3, or s t s t
    with m(s,t)=4.  Convexity is tested against the full poset, so letters
    of other columns sitting between the chain break the pattern.
    """
    word = tuple(word)
    _check_word(g, word)
    L = len(word)
    if L == 0:
        return True
    below = _reach_below(g, word)
    above = _reach_above(g, word)

    def strictly_between(top: int, bot: int) -> int:
        return below[top] & above[bot]

    # Trace-reducedness: consecutive equal letters need something between.
    last_seen: dict[int, int] = {}
    for q, letter in enumerate(word):
        p = last_seen.get(letter)
        if p is not None and strictly_between(p, q) == 0:
            return False
        last_seen[letter] = q

    # Forbidden alternating convex chains per noncommuting pair.
    gens = sorted(set(word))
    for a_idx, s in enumerate(gens):
        for t in gens[a_idx + 1 :]:
            m = g.bond(s, t)
            if m < 3:
                continue
            positions = [p for p in range(L) if word[p] in (s, t)]
            for start in range(len(positions) - m + 1):
                window = positions[start : start + m]
                labels = [word[p] for p in window]
                if any(labels[i] == labels[i + 1] for i in range(m - 1)):
                    continue
                inner = 0
                for p in window[1:-1]:
                    inner |= 1 << p
                if strictly_between(window[0], window[-1]) == inner:
                    return False
    return True


def _rows_of(g: CoxeterGraph, word: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Row decomposition: each letter sits one row below the lowest earlier
    letter it does not commute with (rows count from 1 at the top)."""
    rows: list[list[int]] = []
    depth: list[int] = []
    for p, letter in enumerate(word):
        d = 0
        for q in range(p):
            if not g.commutes(letter, word[q]):
                d = max(d, depth[q] + 1)
        depth.append(d)
        while len(rows) <= d:
            rows.append([])
        rows[d].append(letter)
    return tuple(tuple(sorted(row)) for row in rows)


@dataclass(frozen=True)
class FcElement:
    """A fully commutative element, stored as its canonical heap rows.

    Row 1 is the left descent set; every other entry sits as high as its
    non-commutation constraints allow.  Two fc-reduced words are commutation
    equivalent iff they produce equal rows.
    """

    graph: CoxeterGraph
    rows: tuple[tuple[int, ...], ...]

    def sort_key(self) -> tuple:
        return (self.length, self.word)

    @property
    def word(self) -> Word:
        return tuple(i for row in self.rows for i in row)

    @property
    def length(self) -> int:
        return sum(len(row) for row in self.rows)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.rows

    def left_descents(self) -> frozenset[int]:
        return frozenset(self.rows[0]) if self.rows else frozenset()

    def right_descents(self) -> frozenset[int]:
        if not self.rows:
            return frozenset()
        rev = _rows_of(self.graph, self.word[::-1])
        return frozenset(rev[0])

    def reversed(self) -> "FcElement":
        return FcElement(self.graph, _rows_of(self.graph, self.word[::-1]))

    def rows_text(self) -> str:
        return "|".join(" ".join(str(i) for i in row) for row in self.rows)


def identity(g: CoxeterGraph) -> FcElement:
    return FcElement(g, ())


def canonical_form(g: CoxeterGraph, word: Sequence[int]) -> FcElement:
    """Canonical (Cartier-Foata) form of an fc-reduced word."""
    word = tuple(word)
    if not is_fc_reduced(g, word):
        raise ValueError(f"word {format_word(word)!r} is not fc-reduced over {g.describe()}")
    return FcElement(g, _rows_of(g, word))


def parse_rows(g: CoxeterGraph, text: str) -> FcElement:
    """Parse the canonical-form text format, e.g. "3 5|2 4 6|1 5|2"."""
    if not text:
        return identity(g)
    word = [int(tok) for part in text.split("|") for tok in part.split()]
    return canonical_form(g, word)


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"


def descents(e: FcElement, side: Side) -> frozenset[int]:
    return e.left_descents() if side is Side.LEFT else e.right_descents()


def enumerate_fc(g: CoxeterGraph, max_len: int) -> list[FcElement]:
    """All fully commutative elements of length <= max_len.

    BFS by length, extending on both sides and deduplicating on canonical
    form; the result is grouped by length and lexicographic in the canonical
    word within each length.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    out: list[FcElement] = [identity(g)]
    level = {identity(g)}
    for _ in range(max_len):
        nxt: set[FcElement] = set()
        for e in level:
            word = e.word
            for i in g.generators:
                for cand in ((i,) + word, word + (i,)):
                    if is_fc_reduced(g, cand):
                        nxt.add(FcElement(g, _rows_of(g, cand)))
        out.extend(sorted(nxt, key=lambda e: e.word))
        level = nxt
        if not level:
            break
    return out


# --- Type B finite-group oracle ------------------------------------------
#
# Signed permutations are stored as the image tuple of 1..n; s_1 negates the
# first entry, s_i (i >= 2) swaps entries i-1 and i.  Lengths come from BFS
# over the Cayley graph, never from a closed formula.


@dataclass(frozen=True)
class SignedPermTable:
    n: int
    lengths: dict[tuple[int, ...], int] = field(compare=False)

    def __post_init__(self):
        expected = 2**self.n
        for k in range(2, self.n + 1):
            expected *= k
        if len(self.lengths) != expected:
            raise ValueError("table does not cover the whole group")


def _bperm_apply(perm: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Right multiplication by the generator s_i."""
    t = list(perm)
    if i == 1:
        t[0] = -t[0]
    else:
        t[i - 2], t[i - 1] = t[i - 1], t[i - 2]
    return tuple(t)


@lru_cache(maxsize=None)
def signed_perm_table(n: int) -> SignedPermTable:
    if not 2 <= n <= 4:
        raise ValueError("the type B oracle supports 2 <= n <= 4")
    start = tuple(range(1, n + 1))
    lengths = {start: 0}
    frontier = deque([start])
    while frontier:
        perm = frontier.popleft()
        for i in range(1, n + 1):
            nbr = _bperm_apply(perm, i)
            if nbr not in lengths:
                lengths[nbr] = lengths[perm] + 1
                frontier.append(nbr)
    return SignedPermTable(n, lengths)


def _oracle_is_fc(n: int, table: SignedPermTable, perm: tuple[int, ...]) -> bool:
    """Exhaustive reduced-expression search: fc iff no reduced expression of
    the element contains a literal braid factor."""
    g = CoxeterGraph(GraphKind.B, n)
    lengths = table.lengths

    def braid_at_end(word: list[int]) -> bool:
        if len(word) >= 3:
            s, t = word[-1], word[-2]
            if word[-3] == s and g.bond(s, t) == 3:
                return True
        if len(word) >= 4:
            s, t = word[-1], word[-2]
            if word[-4] == t and word[-3] == s and g.bond(s, t) == 4:
                return True
        return False

    def walk(current: tuple[int, ...], prefix: list[int]) -> bool:
        """True if some reduced expression extending ``prefix`` has a braid."""
        if braid_at_end(prefix):
            return True
        if lengths[current] == 0:
            return False
        for i in range(1, n + 1):
            nxt = _bperm_apply(current, i)
            if lengths[nxt] < lengths[current]:
                prefix.append(i)
                found = walk(nxt, prefix)
                prefix.pop()
                if found:
                    return True
        return False

    # Reduced expressions are built right-to-left via right descents; braids
    # are direction-symmetric, so scanning suffixes is equivalent.
    return not walk(perm, [])


def bn_oracle_counts(n: int, max_len: int) -> dict[int, int]:
    """Length -> number of fully commutative elements of W(B_n), by brute force."""
    table = signed_perm_table(n)
    counts: dict[int, int] = {}
    for perm, length in table.lengths.items():
        if length > max_len:
            continue
        if _oracle_is_fc(n, table, perm):
            counts[length] = counts.get(length, 0) + 1
    return counts
