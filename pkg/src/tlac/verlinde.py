"""The decoration algebra: a free product of two rank-3 Verlinde algebras.

Decorations are written in a fixed ASCII alphabet, one character each:

    b = closed dot      B = closed triangle
    o = open dot        O = open triangle

``b`` and ``B`` form the closed family, ``o`` and ``O`` the open family.
Words over this alphabet multiply subject to

    bb = B      bbb = 2b      (closed copy)
    oo = O      ooo = 2o      (open copy)

which imply BB = 2B, bB = Bb = 2b and the open mirrors.  Normal forms are
words that alternate between the two families, together with an accumulated
power of 2; these alternating words are a basis of the free product.
"""

from __future__ import annotations

from dataclasses import dataclass

CLOSED_DOT = "b"
CLOSED_TRI = "B"
OPEN_DOT = "o"
OPEN_TRI = "O"

ALPHABET = "bBoO"

_FAMILY = {"b": 0, "B": 0, "o": 1, "O": 1}

# Same-family pair rewriting: (x, y) -> (result symbol, power of 2 gained).
_PAIR_RULES = {
    ("b", "b"): ("B", 0),
    ("b", "B"): ("b", 1),
    ("B", "b"): ("b", 1),
    ("B", "B"): ("B", 1),
    ("o", "o"): ("O", 0),
    ("o", "O"): ("o", 1),
    ("O", "o"): ("o", 1),
    ("O", "O"): ("O", 1),
}


def family(symbol: str) -> int:
    """0 for the closed family, 1 for the open family."""
    return _FAMILY[symbol]


def check_word(word: str) -> None:
    bad = set(word) - set(ALPHABET)
    if bad:
        raise ValueError(f"invalid decoration letters {sorted(bad)!r}; expected one of {ALPHABET!r}")


def is_alternating(word: str) -> bool:
    """True if no two adjacent symbols share a family (normal-form words)."""
    return all(_FAMILY[word[i]] != _FAMILY[word[i + 1]] for i in range(len(word) - 1))


@dataclass(frozen=True)
class NormalDeco:
    """A basis word of the decoration algebra times a power of 2."""

    two_exp: int
    word: str

    def __post_init__(self):
        check_word(self.word)
        if not is_alternating(self.word):
            raise ValueError(f"{self.word!r} is not alternating")
        if self.two_exp < 0:
            raise ValueError("negative power of 2")


def deco_normal_form(word: str) -> NormalDeco:
    """Rewrite an arbitrary decoration word to its unique normal form.

    Adjacent same-family pairs are rewritten until the word alternates; the
    order in which redexes are picked does not matter (the rewriting system
    is confluent, which the test suite checks by randomizing redex choice).
    """
    check_word(word)
    two = 0
    stack: list[str] = []
    for sym in word:
        stack.append(sym)
        while len(stack) >= 2 and _FAMILY[stack[-2]] == _FAMILY[stack[-1]]:
            y = stack.pop()
            x = stack.pop()
            res, gain = _PAIR_RULES[(x, y)]
            two += gain
            stack.append(res)
    return NormalDeco(two, "".join(stack))


def normal_form_random_order(word: str, rng) -> NormalDeco:
    """Normalize by repeatedly reducing a randomly chosen redex.

    Exists as an independent route for the confluence check; not used by the
    algebra itself.
    """
    check_word(word)
    two = 0
    symbols = list(word)
    while True:
        redexes = [
            i
            for i in range(len(symbols) - 1)
            if _FAMILY[symbols[i]] == _FAMILY[symbols[i + 1]]
        ]
        if not redexes:
            return NormalDeco(two, "".join(symbols))
        i = rng.choice(redexes)
        res, gain = _PAIR_RULES[(symbols[i], symbols[i + 1])]
        two += gain
        symbols[i : i + 2] = [res]


def deco_concat(a: NormalDeco, b: NormalDeco) -> NormalDeco:
    """Product in the decoration algebra (normal form of the concatenation)."""
    nf = deco_normal_form(a.word + b.word)
    return NormalDeco(a.two_exp + b.two_exp + nf.two_exp, nf.word)


def deco_reverse(a: NormalDeco) -> NormalDeco:
    """Reverse the symbol sequence; reversal preserves normality."""
    return NormalDeco(a.two_exp, a.word[::-1])


def reduce_cyclic(word: str) -> NormalDeco:
    """Normalize a decoration word read around a loop.

    Same-family pairs reduce as on an edge, including across the wrap-around
    adjacency.  The result is a cyclically alternating word (canonicalized to
    the lexicographically least rotation of it or its reversal) with the
    gained power of 2.
    """
    nf = deco_normal_form(word)
    two, symbols = nf.two_exp, nf.word
    while len(symbols) >= 2 and _FAMILY[symbols[0]] == _FAMILY[symbols[-1]]:
        res, gain = _PAIR_RULES[(symbols[-1], symbols[0])]
        two += gain
        inner = deco_normal_form(res + symbols[1:-1])
        two += inner.two_exp
        symbols = inner.word
    if len(symbols) > 1:
        candidates = []
        for w in (symbols, symbols[::-1]):
            candidates.extend(w[i:] + w[:i] for i in range(len(w)))
        symbols = min(candidates)
    return NormalDeco(two, symbols)


def chebyshev_u(k: int) -> list[int]:
    """Coefficients (ascending) of the k-th second-kind Chebyshev-style polynomial.

    U_0 = 1, U_1 = x, U_{k+1} = x*U_k - U_{k-1}.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        shifted = [0] + cur
        nxt = [c - (prev[i] if i < len(prev) else 0) for i, c in enumerate(shifted)]
        prev, cur = cur, nxt
    return cur
