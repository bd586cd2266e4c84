"""Decorated planar diagrams on an (n+2)-box, in a canonical combinatorial
encoding.

A diagram is a non-crossing perfect matching of the 2(n+2) boundary nodes
(north 1..n+2 and south 1'..(n+2)'), each edge carrying a decoration word,
together with a count of loops (the only loop that survives reduction is the
one decorated with a closed and an open triangle) and, when the diagram has
exactly one north cup, a single bit recording which decorated propagating
edge holds the vertically highest block.  Curve geometry never exists:
equality of diagrams is equality of these records.

Nodes are encoded as signed integers: +i is north node i, -i is south node
i'.  Decoration words are read from an edge's first stored endpoint to the
second; propagating edges store north first, north and south edges store the
smaller index first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .coxeter import CoxeterGraph, GraphKind, Side
from .tl import DeltaPoly
from .verlinde import (
    NormalDeco,
    check_word,
    deco_normal_form,
    family,
    is_alternating,
    reduce_cyclic,
)

LOOP_WORD = "BO"


class MalformedDiagramError(ValueError):
    """Raised for data that is not even structurally a diagram."""


class DiagramAlgebraError(RuntimeError):
    """Raised when a product escapes the admissible world (a bug, not an input error)."""


def _canonical_endpoints(u: int, v: int) -> tuple[int, int]:
    if u > 0 and v > 0 or u < 0 and v < 0:
        return (u, v) if abs(u) < abs(v) else (v, u)
    return (u, v) if u > 0 else (v, u)


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    deco: str = ""

    def __post_init__(self):
        if self.a == self.b:
            raise MalformedDiagramError("edge endpoints coincide")
        check_word(self.deco)

    def other(self, node: int) -> int:
        return self.b if node == self.a else self.a

    def touches(self, node: int) -> bool:
        return node in (self.a, self.b)

    @property
    def is_prop(self) -> bool:
        return (self.a > 0) != (self.b > 0)

    @property
    def is_north(self) -> bool:
        return self.a > 0 and self.b > 0

    @property
    def is_south(self) -> bool:
        return self.a < 0 and self.b < 0

    def sort_key(self) -> tuple:
        return (0 if self.a > 0 else 1, abs(self.a))


def edge(u: int, v: int, deco_from_u: str = "") -> Edge:
    """Build an edge with the decoration read from u to v, stored canonically."""
    a, b = _canonical_endpoints(u, v)
    word = deco_from_u if (a, b) == (u, v) else deco_from_u[::-1]
    return Edge(a, b, word)


@dataclass(frozen=True)
class AdmissibleDiagram:
    n: int
    edges: tuple[Edge, ...]
    loops: int = 0
    top_side: Optional[str] = None  # 'W' or 'E'; stored only when ambiguous

    def __post_init__(self):
        if self.loops < 0:
            raise MalformedDiagramError("negative loop count")
        if self.top_side not in (None, "W", "E"):
            raise MalformedDiagramError("top_side must be None, 'W' or 'E'")

    # -- structure ----------------------------------------------------------

    @property
    def k(self) -> int:
        return self.n + 2

    def node_edges(self) -> dict[int, Edge]:
        out: dict[int, Edge] = {}
        for e in self.edges:
            out[e.a] = e
            out[e.b] = e
        return out

    def edge_at(self, node: int) -> Edge:
        for e in self.edges:
            if e.touches(node):
                return e
        raise MalformedDiagramError(f"no edge at node {node}")

    def a_value(self) -> int:
        return sum(1 for e in self.edges if e.is_north)

    def props(self) -> list[Edge]:
        return sorted((e for e in self.edges if e.is_prop), key=lambda e: e.a)

    @property
    def is_undammed(self) -> bool:
        return not any(e.is_prop for e in self.edges)

    def west_east(self) -> tuple[Optional[Edge], Optional[Edge]]:
        props = self.props()
        if not props:
            return None, None
        return props[0], props[-1]

    def decoration_count(self) -> int:
        return sum(len(e.deco) for e in self.edges) + 2 * self.loops

    # -- a = 1 block order ---------------------------------------------------

    def block_order(self) -> tuple[str, ...]:
        """Top-to-bottom sequence of 'W'/'E' tags of the propagating-edge
        blocks; empty unless the a-value is 1."""
        if self.a_value() != 1:
            return ()
        west, east = self.west_east()
        cw = len(west.deco) if west else 0
        ce = len(east.deco) if east else 0
        if cw == ce == 0:
            return ()
        if cw > ce:
            start = "W"
        elif ce > cw:
            start = "E"
        else:
            start = self.top_side or "W"
        out = []
        turn = start
        w_left, e_left = cw, ce
        while w_left or e_left:
            if turn == "W" and w_left:
                out.append("W")
                w_left -= 1
            elif turn == "E" and e_left:
                out.append("E")
                e_left -= 1
            else:
                out.append("W" if w_left else "E")
                if w_left:
                    w_left -= 1
                else:
                    e_left -= 1
            turn = "E" if turn == "W" else "W"
        return tuple(out)

    def flip(self) -> "AdmissibleDiagram":
        """Swap the north and south faces (the decorations follow the curves,
        and the vertical block order reverses)."""
        flipped = [edge(-e.a, -e.b, e.deco) for e in self.edges]
        order = self.block_order()
        top = order[-1] if order else None
        return _assemble(self.n, flipped, self.loops, top)


def _assemble(n: int, edges: Iterable[Edge], loops: int, top_side: Optional[str]) -> AdmissibleDiagram:
    """Sort edges, normalize the top-side bit, and build the record."""
    edges = tuple(sorted(edges, key=Edge.sort_key))
    d = AdmissibleDiagram(n, edges, loops, None)
    west, east = d.west_east()
    cw = len(west.deco) if west else 0
    ce = len(east.deco) if east else 0
    if d.a_value() == 1 and cw == ce and cw > 0:
        if top_side not in ("W", "E"):
            raise DiagramAlgebraError("ambiguous block order needs a top side")
        return AdmissibleDiagram(n, edges, loops, top_side)
    return d


def identity_diagram(g: CoxeterGraph) -> AdmissibleDiagram:
    n = _diagram_rank(g)
    return _assemble(n, [Edge(i, -i) for i in range(1, n + 3)], 0, None)


def _diagram_rank(g: CoxeterGraph) -> int:
    if g.kind is GraphKind.A:
        raise ValueError("diagrams are defined over the affine C chain (kinds b, bprime, caffine)")
    return g.n


def simple_diagram(g: CoxeterGraph, i: int) -> AdmissibleDiagram:
    n = _diagram_rank(g)
    g.check_generator(i)
    deco = "b" if i == 1 else "o" if i == n + 1 else ""
    edges = [Edge(i, i + 1, deco), Edge(-i, -(i + 1), deco)]
    edges.extend(Edge(j, -j) for j in range(1, n + 3) if j not in (i, i + 1))
    return _assemble(n, edges, 0, None)


@dataclass(frozen=True)
class DiagramResult:
    two_exp: int
    delta_exp: int
    diagram: AdmissibleDiagram

    def __post_init__(self):
        if self.two_exp < 0 or self.delta_exp < 0:
            raise ValueError("negative exponent")

    def scalars(self) -> tuple[int, int]:
        return (self.two_exp, self.delta_exp)


def plain(d: AdmissibleDiagram) -> DiagramResult:
    return DiagramResult(0, 0, d)


# --- generator action -------------------------------------------------------


def _traverse(e: Edge, start: int) -> str:
    """Decoration word of e read starting from the given endpoint."""
    return e.deco if e.a == start else e.deco[::-1]


def act_simple(side: Side, i: int, r: DiagramResult) -> DiagramResult:
    """Concatenate the i-th simple diagram onto the given face and reduce."""
    if side is Side.RIGHT:
        flipped = act_simple(Side.LEFT, i, DiagramResult(r.two_exp, r.delta_exp, r.diagram.flip()))
        return DiagramResult(flipped.two_exp, flipped.delta_exp, flipped.diagram.flip())

    d = r.diagram
    n = d.n
    if not 1 <= i <= n + 1:
        raise ValueError(f"simple diagram index {i} out of range for n={n}")
    cap = "b" if i == 1 else "o" if i == n + 1 else ""
    two, delta, loops = r.two_exp, r.delta_exp, d.loops
    n1, n2 = i, i + 1
    e1 = d.edge_at(n1)
    e2 = d.edge_at(n2)
    new_cup = Edge(n1, n2, cap)
    a_old = d.a_value()

    if e1 is e2:
        # The cap closes a cup of d into a loop.
        cyc = reduce_cyclic(e1.deco + cap)
        two += cyc.two_exp
        if len(cyc.word) <= 1:
            delta += 1
        elif cyc.word == LOOP_WORD:
            loops += 1
        else:
            raise DiagramAlgebraError(f"irreducible loop {cyc.word!r} outside the admissible world")
        rest = [e for e in d.edges if e is not e1]
        return DiagramResult(two, delta, _assemble(n, rest + [new_cup], loops, d.top_side))

    # The cap merges the two edges of d at nodes i and i+1.
    na, nb = e1.other(n1), e2.other(n2)
    raw = _traverse(e1, na) + cap + _traverse(e2, n2)
    merged = edge(na, nb, raw)
    rest = [e for e in d.edges if e is not e1 and e is not e2]
    new_edges = rest + [merged, new_cup]
    a_new = sum(1 for e in new_edges if e.is_north)

    if a_new != 1:
        # Away from the a=1 regime every edge carries one maximal block, so
        # everything conjoins; multi-block words from an a=1 source collapse.
        total: list[Edge] = []
        for e in new_edges:
            nf = deco_normal_form(e.deco)
            two += nf.two_exp
            total.append(Edge(e.a, e.b, nf.word))
        return DiagramResult(two, delta, _assemble(n, total, loops, None))

    # a_new == 1: block positions matter.  One of the merged edges was the
    # cup of d (or d had no cup); the other blocks keep their vertical order
    # and any new cup/cap decoration enters above all of them.
    if a_old == 0:
        nf = deco_normal_form(merged.deco)
        two += nf.two_exp
        edges_out = rest + [Edge(merged.a, merged.b, nf.word), new_cup]
        return DiagramResult(two, delta, _assemble(n, edges_out, loops, None))

    if not (e1.is_north or e2.is_north):
        raise DiagramAlgebraError("a-value 1 merge must consume the old cup")
    old_cup = e1 if e1.is_north else e2
    new_top = old_cup.deco + cap
    if old_cup.deco and cap:
        raise DiagramAlgebraError("decorated cup and decorated cap in one a=1 merge")
    if not merged.is_prop:
        raise DiagramAlgebraError("a=1 merge must produce a propagating edge")

    order = d.block_order()
    probe = AdmissibleDiagram(n, tuple(sorted(new_edges, key=Edge.sort_key)), loops, None)
    west, east = probe.west_east()

    def top_bit(edges_now: list[Edge], top: Optional[str]) -> Optional[str]:
        p = AdmissibleDiagram(n, tuple(sorted(edges_now, key=Edge.sort_key)), loops, None)
        w, e = p.west_east()
        cw = len(w.deco) if w else 0
        ce = len(e.deco) if e else 0
        return top if (cw == ce and cw > 0) else None

    if not new_top:
        # Decorations and their vertical order are unchanged.
        top = top_bit(new_edges, order[0] if order else None)
        return DiagramResult(two, delta, _assemble(n, new_edges, loops, top))

    side_tag = "W" if merged == west else "E" if merged == east else None
    if side_tag is None:
        raise DiagramAlgebraError("new decoration landed on an interior propagating edge")
    other_prop = east if side_tag == "W" else west
    other_deco = other_prop.deco if other_prop is not None and other_prop != merged else ""
    if not merged.deco.startswith(new_top):
        raise DiagramAlgebraError("merged word does not start with the new decoration")
    old_blocks = merged.deco[len(new_top) :]

    # The new block sits above every old one.  It conjoins with the top
    # block of its own edge exactly when no block of the other edge lies
    # vertically between them.
    conjoin = bool(old_blocks) and (not other_deco or (order and order[0] == side_tag))
    if conjoin:
        nf = deco_normal_form(new_top + old_blocks[0])
        two += nf.two_exp
        if len(nf.word) != 1:
            raise DiagramAlgebraError("conjoined block is not a single decoration")
        new_word = nf.word + old_blocks[1:]
    else:
        new_word = new_top + old_blocks
    fixed = [Edge(merged.a, merged.b, new_word) if e == merged else e for e in new_edges]
    return DiagramResult(two, delta, _assemble(n, fixed, loops, top_bit(fixed, side_tag)))


def from_generator_word(g: CoxeterGraph, gens: Sequence[int]) -> DiagramResult:
    """Left-to-right fold of the simple diagrams named by ``gens``."""
    acc = plain(identity_diagram(g))
    for i in gens:
        g.check_generator(i)
        acc = act_simple(Side.RIGHT, i, acc)
    return acc


# --- admissibility ----------------------------------------------------------


def _circle_positions(n: int) -> dict[int, int]:
    k = n + 2
    pos = {i: i - 1 for i in range(1, k + 1)}
    pos.update({-j: 2 * k - j for j in range(1, k + 1)})
    return pos


def _spans(d: AdmissibleDiagram, pos: dict[int, int]) -> dict[Edge, tuple[int, int]]:
    out = {}
    for e in d.edges:
        p, q = pos[e.a], pos[e.b]
        out[e] = (min(p, q), max(p, q))
    return out


def is_noncrossing(d: AdmissibleDiagram) -> bool:
    pos = _circle_positions(d.n)
    spans = list(_spans(d, pos).values())
    for (p1, q1), (p2, q2) in itertools.combinations(spans, 2):
        if p1 < p2 < q1 < q2 or p2 < p1 < q2 < q1:
            return False
    return True


def _exposure(d: AdmissibleDiagram) -> dict[Edge, tuple[bool, bool]]:
    """(L-exposed, R-exposed) per edge: an edge can deform to a wall iff no
    other edge's span separates it from that wall's cut point."""
    k = d.k
    pos_l = _circle_positions(d.n)
    spans_l = _spans(d, pos_l)
    # For the right wall, cut the circle between north n+2 and south (n+2)'.
    pos_r = {node: (p - k) % (2 * k) for node, p in pos_l.items()}
    spans_r = _spans(d, pos_r)
    out = {}
    for e in d.edges:
        l_ok = not any(f is not e and spans_l[f][0] < spans_l[e][0] and spans_l[e][1] < spans_l[f][1] for f in d.edges)
        r_ok = not any(f is not e and spans_r[f][0] < spans_r[e][0] and spans_r[e][1] < spans_r[f][1] for f in d.edges)
        out[e] = (l_ok, r_ok)
    return out


def validate_admissible(d: AdmissibleDiagram) -> list[str]:
    """All admissibility violations (empty list = admissible).

    Structural problems (not a perfect matching, bad node indices, bad
    letters) raise MalformedDiagramError instead of being reported.
    """
    k = d.n + 2
    nodes = sorted(itertools.chain(range(1, k + 1), range(-k, 0)))
    seen: list[int] = []
    for e in d.edges:
        for node in (e.a, e.b):
            if not (1 <= abs(node) <= k):
                raise MalformedDiagramError(f"node {node} out of range")
            seen.append(node)
    if sorted(seen) != nodes:
        raise MalformedDiagramError("edges are not a perfect matching of the boundary nodes")

    v: list[str] = []
    a = d.a_value()
    if not is_noncrossing(d):
        v.append("crossing edges")
        return v

    if d.loops and not d.is_undammed:
        v.append("C1: loops on a dammed diagram")
    if a == 0:
        if any(e.deco for e in d.edges):
            v.append("a=0 diagrams must be undecorated")
        if d.top_side is not None:
            v.append("spurious block-order bit")
        return v

    exposure = _exposure(d)
    west, east = d.west_east()
    single_prop = len(d.props()) == 1

    for e in d.edges:
        l_ok, r_ok = exposure[e]
        if any(family(c) == 0 for c in e.deco) and not l_ok:
            v.append(f"closed decoration on a non-L-exposed edge {e.a},{e.b}")
        if any(family(c) == 1 for c in e.deco) and not r_ok:
            v.append(f"open decoration on a non-R-exposed edge {e.a},{e.b}")

    # Flat words must be basis words except on a=1 propagating edges, where
    # the symbols are separate single-decoration blocks.
    for e in d.edges:
        if a == 1 and e.is_prop:
            continue
        if not is_alternating(e.deco):
            v.append(f"non-normal decoration {e.deco!r} on edge {e.a},{e.b}")

    # Placement of dots: 'b' only first/last on edges at nodes 1/1', 'o'
    # only at nodes n+2/(n+2)'; on a=1 propagating edges dots may also sit at
    # the extremes of the block sequence (axiom C5's bullet patterns).
    for e in d.edges:
        for p, c in enumerate(e.deco):
            if c == "b":
                first_ok = p == 0 and (e.a in (1, -1) or (a == 1 and e.is_prop and e is west))
                last_ok = p == len(e.deco) - 1 and (e.b in (1, -1) or (a == 1 and e.is_prop and e is west))
                if not (first_ok or last_ok):
                    v.append(f"misplaced closed dot on edge {e.a},{e.b}")
            if c == "o":
                first_ok = p == 0 and (e.a in (k, -k) or (a == 1 and e.is_prop and e is east))
                last_ok = p == len(e.deco) - 1 and (e.b in (k, -k) or (a == 1 and e.is_prop and e is east))
                if not (first_ok or last_ok):
                    v.append(f"misplaced open dot on edge {e.a},{e.b}")

    # Dammed diagrams: only the outermost propagating edges may be decorated.
    if not d.is_undammed:
        for e in d.props():
            if e.deco and e is not west and e is not east:
                v.append(f"decorated interior propagating edge {e.a},{e.b}")
        if not single_prop:
            for e in (west, east):
                if e is None or not e.deco:
                    continue
                closed = any(family(c) == 0 for c in e.deco)
                opened = any(family(c) == 1 for c in e.deco)
                if closed and opened:
                    v.append("mixed decorations on a propagating edge of a multi-propagating diagram")

    if d.is_undammed:
        # C2: the edges at nodes 1/1' start with a dot, the edges at
        # n+2/(n+2)' end with one, and no other dots occur (checked above).
        for node in (1, -1):
            e = d.edge_at(node)
            word = _traverse(e, node)
            if not word.startswith("b"):
                v.append(f"undammed edge at node {node} must start with a closed dot")
        for node in (k, -k):
            e = d.edge_at(node)
            word = _traverse(e, node)
            if not word.startswith("o"):
                v.append(f"undammed edge at node {node} must end with an open dot")
        # Closed decorations precede open ones along each edge.
        for e in d.edges:
            fams = [family(c) for c in e.deco]
            if fams != sorted(fams):
                v.append(f"open decoration precedes a closed one on edge {e.a},{e.b}")

    if single_prop:
        e = d.props()[0]
        core = e.deco
        if core:
            closed = any(family(c) == 0 for c in core)
            opened = any(family(c) == 1 for c in core)
            lead, tail = core[0], core[-1]
            allowed_mid = all(c in "BO" for c in core[1:-1]) if len(core) > 2 else True
            if not allowed_mid:
                v.append("single-propagating edge carries an interior dot")
            if closed and opened:
                if e.touches(1) and lead != "b" and lead != "B":
                    v.append("single-propagating edge at node 1 must lead with a closed decoration")
            if e.a == 1 and e.b == -1 and len(core) == 1 and core not in ("B",):
                v.append("vertical 1-1' single propagating edge carries a lone non-triangle")
            if e.a == k and e.b == -k and len(core) == 1 and core not in ("O",):
                v.append("vertical (n+2) single propagating edge carries a lone non-triangle")

    if a == 1:
        # The unique cup and cap are simple, block counts alternate, and the
        # west/east words are triangle runs with dots only at the extremes.
        cup = next(e for e in d.edges if e.is_north)
        capedge = next(e for e in d.edges if e.is_south)
        for e, label in ((cup, "north"), (capedge, "south")):
            lo = min(abs(e.a), abs(e.b))
            hi = max(abs(e.a), abs(e.b))
            if hi != lo + 1:
                v.append(f"a=1 {label} arc joins non-adjacent nodes")
            expected = "b" if lo == 1 else "o" if hi == k else ""
            if e.deco != expected:
                v.append(f"a=1 {label} arc is not simple")
        cw = len(west.deco) if west else 0
        ce = len(east.deco) if east else 0
        if abs(cw - ce) > 1:
            v.append("block counts on the outer propagating edges differ by more than 1")
        if (d.top_side is not None) != (cw == ce and cw > 0):
            v.append("block-order bit stored inconsistently")
        if west is not None and west.deco:
            body = west.deco
            if body.strip("b") and set(body.strip("b")) != {"B"} or len(body) - len(body.strip("b")) > 2:
                v.append("west propagating word is not dots around a triangle run")
            if "b" in body[1:-1]:
                v.append("interior dot on the west propagating edge")
        if east is not None and east.deco:
            body = east.deco
            if body.strip("o") and set(body.strip("o")) != {"O"}:
                v.append("east propagating word is not dots around a triangle run")
            if "o" in body[1:-1]:
                v.append("interior dot on the east propagating edge")
    else:
        if d.top_side is not None:
            v.append("spurious block-order bit")

    return v


# --- shape, factorization, products ----------------------------------------


def shape_and_stat(d: AdmissibleDiagram) -> tuple[tuple[tuple[int, int], ...], int]:
    """The undecorated loop-free matching r(d) and the statistic h(d) =
    number of decorations plus number of loops."""
    shape = tuple(sorted((e.a, e.b) for e in d.edges))
    h = sum(len(e.deco) for e in d.edges) + d.loops * (1 + len(LOOP_WORD))
    return shape, h


def descent_indices(d: AdmissibleDiagram, south: bool = False) -> list[int]:
    """Indices i such that the diagram has a simple edge at (i, i+1) on the
    chosen face."""
    out = []
    for e in d.edges:
        if south and not e.is_south or not south and not e.is_north:
            continue
        lo, hi = sorted((abs(e.a), abs(e.b)))
        if hi != lo + 1:
            continue
        expected = "b" if lo == 1 else "o" if hi == d.k else ""
        if e.deco == expected:
            out.append(lo)
    return sorted(out)


def _unreduce_variants(word: str) -> Iterator[str]:
    """The word itself and every single un-reduction of a triangle into two
    dots (the only coefficient-free reductions)."""
    yield word
    for p, c in enumerate(word):
        if c == "B":
            yield word[:p] + "bb" + word[p + 1 :]
        elif c == "O":
            yield word[:p] + "oo" + word[p + 1 :]


def _split_candidates(word: str, cap: str) -> Iterator[tuple[str, str]]:
    """Pairs (wa, wb) whose merge wa+cap+wb reduces with coefficient 1 to word."""
    seen = set()
    for variant in _unreduce_variants(word):
        limit = len(variant) - len(cap)
        for cut in range(limit + 1):
            if variant[cut : cut + len(cap)] != cap:
                continue
            pair = (variant[:cut], variant[cut + len(cap) :])
            if pair not in seen:
                seen.add(pair)
                yield pair


def _loop_refill_words(cap: str) -> list[str]:
    """Cup words w with reduce_cyclic(w + cap) == (0, LOOP_WORD)."""
    out = []
    alphabet = "bBoO"
    for length in (2, 3):
        for letters in itertools.product(alphabet, repeat=length):
            w = "".join(letters)
            result = reduce_cyclic(w + cap)
            if result.two_exp == 0 and result.word == LOOP_WORD:
                out.append(w)
    return out


def _peel_candidates(d: AdmissibleDiagram, i: int) -> Iterator[AdmissibleDiagram]:
    """Diagrams c with act_simple(LEFT, i, c) potentially equal to (0,0,d)."""
    n = d.n
    cap = "b" if i == 1 else "o" if i == n + 1 else ""
    cup = d.edge_at(i)
    if cup is not d.edge_at(i + 1):
        return
    base = [e for e in d.edges if e is not cup]

    def tops(cand_edges: list[Edge], loops: int) -> Iterator[AdmissibleDiagram]:
        probe = AdmissibleDiagram(n, tuple(sorted(cand_edges, key=Edge.sort_key)), loops, None)
        west, east = probe.west_east()
        cw = len(west.deco) if west else 0
        ce = len(east.deco) if east else 0
        if probe.a_value() == 1 and cw == ce and cw > 0:
            for bit in ("W", "E"):
                yield AdmissibleDiagram(n, probe.edges, loops, bit)
        else:
            yield probe

    if d.loops:
        for w in _loop_refill_words(cap):
            yield from tops(base + [Edge(i, i + 1, w)], d.loops - 1)

    for target in base:
        others = [e for e in base if e is not target]
        for a_node, b_node in ((target.a, target.b), (target.b, target.a)):
            word = _traverse(target, a_node)
            for wa, wb in _split_candidates(word, cap):
                try:
                    cand = others + [edge(a_node, i, wa), edge(i + 1, b_node, wb)]
                except MalformedDiagramError:
                    continue
                yield from tops(cand, d.loops)


def _length_lower_bound(d: AdmissibleDiagram) -> int:
    return max(d.a_value(), d.loops, (d.decoration_count() - 2 * d.loops + 1) // 2)


def factor_into_simples(d: AdmissibleDiagram) -> tuple[int, ...]:
    """A generator word reconstructing d exactly: folding the simple
    diagrams over the identity returns (0, 0, d)."""
    problems = validate_admissible(d)
    if problems:
        raise MalformedDiagramError("; ".join(problems))
    ident = _assemble(d.n, [Edge(j, -j) for j in range(1, d.k + 1)], 0, None)

    def search(cur: AdmissibleDiagram, budget: int) -> Optional[tuple[int, ...]]:
        if cur == ident:
            return ()
        if budget <= 0 or _length_lower_bound(cur) > budget:
            return None
        desc = descent_indices(cur)
        if not desc:
            return None
        i = desc[0]
        seen: set[AdmissibleDiagram] = set()
        for cand in _peel_candidates(cur, i):
            if cand in seen:
                continue
            seen.add(cand)
            if validate_admissible(cand):
                continue
            if act_simple(Side.LEFT, i, plain(cand)) != plain(cur):
                continue
            rest = search(cand, budget - 1)
            if rest is not None:
                return (i,) + rest
        return None

    budget = max(1, _length_lower_bound(d))
    while budget <= _length_lower_bound(d) + 4096:
        word = search(d, budget)
        if word is not None:
            return word
        budget += 1
    raise DiagramAlgebraError("factorization search exhausted (not reachable for admissible input)")


def multiply(d1: AdmissibleDiagram, d2: AdmissibleDiagram) -> DiagramResult:
    """Product in the diagram algebra: factor the left diagram into simple
    diagrams and fold them onto the right one."""
    if d1.n != d2.n:
        raise ValueError("rank mismatch")
    word = factor_into_simples(d1)
    acc = plain(d2)
    for i in reversed(word):
        acc = act_simple(Side.LEFT, i, acc)
    return acc


def _diagram_sort_key(d: AdmissibleDiagram) -> tuple:
    return (d.a_value(), d.loops, tuple((e.a, e.b, e.deco) for e in d.edges), d.top_side or "")


@dataclass(frozen=True)
class DiagramElement:
    """A finite Z[delta]-linear combination of admissible diagrams."""

    n: int
    terms: tuple[tuple[AdmissibleDiagram, DeltaPoly], ...]

    @classmethod
    def from_dict(cls, n: int, d: dict[AdmissibleDiagram, DeltaPoly]) -> "DiagramElement":
        items = [(k, p) for k, p in d.items() if not p.is_zero()]
        items.sort(key=lambda kp: _diagram_sort_key(kp[0]))
        return cls(n, tuple(items))


# --- serialization ----------------------------------------------------------


def _node_name(node: int) -> str:
    return f"N{node}" if node > 0 else f"S{-node}"


def _parse_node(text: str) -> int:
    face, idx = text[0], int(text[1:])
    if face == "N":
        return idx
    if face == "S":
        return -idx
    raise MalformedDiagramError(f"bad node name {text!r}")


def to_text(d: AdmissibleDiagram) -> str:
    """The line-oriented diagram file format (bit-exact, parseable)."""
    lines = [f"n={d.n} loops={d.loops}"]
    for e in d.edges:
        lines.append(f"edge {_node_name(e.a)}-{_node_name(e.b)} deco={e.deco}")
    order = d.block_order()
    if d.a_value() == 1 and order:
        west, east = d.west_east()
        edge_index = {e: p for p, e in enumerate(d.edges)}
        counters = {"W": 0, "E": 0}
        cells = []
        for tag in order:
            target = west if tag == "W" else east
            cells.append(f"(e{edge_index[target]},b{counters[tag]})")
            counters[tag] += 1
        lines.append("order " + " ".join(cells))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> AdmissibleDiagram:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("n="):
        raise MalformedDiagramError("missing header")
    head = dict(part.split("=") for part in lines[0].split())
    n, loops = int(head["n"]), int(head["loops"])
    edges = []
    order_line = None
    for line in lines[1:]:
        if line.startswith("edge "):
            _, pair, deco = line.split(" ", 2)
            u, v = pair.split("-")
            if not deco.startswith("deco="):
                raise MalformedDiagramError(f"bad edge line {line!r}")
            edges.append(Edge(_parse_node(u), _parse_node(v), deco[len("deco=") :]))
        elif line.startswith("order "):
            order_line = line
        else:
            raise MalformedDiagramError(f"bad line {line!r}")
    probe = AdmissibleDiagram(n, tuple(sorted(edges, key=Edge.sort_key)), loops, None)
    top = None
    if order_line is not None:
        first = order_line.split()[1]
        edge_index = int(first[2 : first.index(",")])
        west, east = probe.west_east()
        target = probe.edges[edge_index]
        top = "W" if target == west else "E"
        cw = len(west.deco) if west else 0
        ce = len(east.deco) if east else 0
        if not (cw == ce and cw > 0):
            top = None
    return _assemble(n, edges, loops, top)


def render_diagram(d: AdmissibleDiagram) -> str:
    """Deterministic monospace picture of the diagram."""
    k = d.k
    col = lambda idx: 4 * (idx - 1)
    width = 4 * k

    def blank() -> list[str]:
        return [" "] * width

    def write(row: list[str], x: int, text: str) -> None:
        for off, ch in enumerate(text):
            if 0 <= x + off < width:
                row[x + off] = ch

    north_edges = sorted((e for e in d.edges if e.is_north), key=lambda e: e.a)
    south_edges = sorted((e for e in d.edges if e.is_south), key=lambda e: -e.a)
    props = d.props()

    header = blank()
    for idx in range(1, k + 1):
        write(header, col(idx), str(idx))
    footer = blank()
    for idx in range(1, k + 1):
        write(footer, col(idx), f"{idx}'")

    def arc_rows(arcs: list[Edge], south: bool) -> list[list[str]]:
        rows: list[list[str]] = []
        spans = [(min(abs(e.a), abs(e.b)), max(abs(e.a), abs(e.b)), e) for e in arcs]
        depth_of = {}
        for lo, hi, e in spans:
            depth = sum(1 for lo2, hi2, _ in spans if lo2 < lo and hi < hi2)
            depth_of[e] = depth
        n_rows = max(depth_of.values(), default=-1) + 1
        for _ in range(max(n_rows, 1)):
            rows.append(blank())
        for lo, hi, e in spans:
            row = rows[depth_of[e]]
            write(row, col(lo), "\\" if not south else "/")
            write(row, col(hi), "/" if not south else "\\")
            for x in range(col(lo) + 1, col(hi)):
                if row[x] == " ":
                    row[x] = "_" if not south else chr(175) if False else "-"
            if e.deco:
                mid = (col(lo) + col(hi)) // 2 - len(e.deco) // 2
                write(row, mid, e.deco)
        # propagating bars pass through the arc rows
        for e in props:
            x = col(abs(e.a if not south else e.b))
            for row in rows:
                if row[x] == " ":
                    row[x] = "|"
        if not arcs:
            rows = []
        return rows

    mid_rows: list[list[str]] = []
    bar_row = blank()
    for e in props:
        x_top, x_bot = col(e.a), col(-e.b)
        if x_top == x_bot:
            write(bar_row, x_top, "|")
            if e.deco:
                write(bar_row, x_top + 1, e.deco)
        else:
            lo, hi = sorted((x_top, x_bot))
            row = blank()
            write(row, x_top, "\\" if x_top < x_bot else "/")
            write(row, x_bot, "\\" if x_top > x_bot else "/")
            for x in range(lo + 1, hi):
                if row[x] == " ":
                    row[x] = "-"
            if e.deco:
                write(row, (lo + hi) // 2 - len(e.deco) // 2, e.deco)
            mid_rows.append(row)
    if not any(ch != " " for ch in bar_row) and not mid_rows:
        mid_rows = [blank()]
    rows = [header]
    rows.extend(arc_rows(north_edges, south=False))
    if any(ch != " " for ch in bar_row):
        rows.append(bar_row)
    rows.extend(mid_rows)
    rows.extend(reversed(arc_rows(south_edges, south=True)))
    rows.append(footer)
    text = "\n".join("".join(r).rstrip() for r in rows)
    if d.loops:
        text += f"\nloops: {d.loops} x [{LOOP_WORD}]"
    return text
