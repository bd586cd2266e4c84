"""Desk-scale verification suites.

Each check returns a CheckResult; the CLI ``verify`` command and the
acceptance test module both run these, so the command-line report and the
test suite cannot drift apart.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Side,
    bn_oracle_counts,
    enumerate_fc,
    format_word,
    graph,
)
from .diagram import (
    AdmissibleDiagram,
    DiagramResult,
    act_simple,
    factor_into_simples,
    from_generator_word,
    identity_diagram,
    plain,
    simple_diagram,
    validate_admissible,
)
from .heap import is_type_I, n_value, odd_indices, paper_type_ii_n_value
from .starops import StarMove, apply_weak_star, classified_irreducibles, is_irreducible
from .theta import verify_faithfulness
from .tl import monomial, mult_generator, normalize_word, weak_star_reverse_check
from .verlinde import ALPHABET, deco_normal_form, normal_form_random_order


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    counts_by_length: dict[int, int] = field(default_factory=dict)
    a_values: list[int] = field(default_factory=list)

    def tsv_row(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name}\t{status}\t{self.detail}\t{self.seconds:.2f}"

    def text_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(name: str, run: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.time()
    passed, detail = run()
    return CheckResult(name, passed, detail, time.time() - start)


def check_enumeration_oracle(ns: Iterable[int] = (2, 3, 4)) -> CheckResult:
    """Criterion 1: length-by-length counts match the signed-permutation
    brute force, and B2 has exactly 7 fc elements up to length 4."""

    def run() -> tuple[bool, str]:
        problems = []
        summaries = []
        for n in ns:
            cap = n * n
            oracle = bn_oracle_counts(n, cap)
            mine: dict[int, int] = {}
            for e in enumerate_fc(graph("b", n), cap):
                mine[e.length] = mine.get(e.length, 0) + 1
            if mine != oracle:
                problems.append(f"B{n}: {mine} != {oracle}")
            summaries.append(f"B{n}:{sum(oracle.values())}")
        b2 = sum(1 for e in enumerate_fc(graph("b", 2), 4))
        if b2 != 7:
            problems.append(f"B2 count up to length 4 is {b2}, not 7")
        detail = "; ".join(problems) if problems else "counts agree (" + ", ".join(summaries) + ")"
        return not problems, detail

    return _timed("enumeration-oracle-typeB", run)


def _irreducible_set(g: CoxeterGraph, max_len: int) -> set[FcElement]:
    return {e for e in enumerate_fc(g, max_len) if is_irreducible(e)}


def check_classification_b(ns: Iterable[int] = (2, 3, 4, 5)) -> CheckResult:
    """Criterion 2: brute-force irreducibles equal the classified list for
    B_n and B'_n."""

    def run() -> tuple[bool, str]:
        problems = []
        total = 0
        for kind in ("b", "bprime"):
            for n in ns:
                g = graph(kind, n)
                cap = n * n
                brute = _irreducible_set(g, cap)
                listed = set(classified_irreducibles(g, cap))
                total += len(brute)
                if brute != listed:
                    extra = {format_word(e.word) for e in listed - brute}
                    missing = {format_word(e.word) for e in brute - listed}
                    problems.append(f"{g.describe()}: extra={sorted(extra)} missing={sorted(missing)}")
        detail = "; ".join(problems) if problems else f"sets equal ({total} irreducibles overall)"
        return not problems, detail

    return _timed("classification-typeB", run)


def check_classification_affine(ns: Iterable[int] = (2, 3, 4), max_len: int = 12) -> CheckResult:
    """Criterion 3: same comparison for the affine graphs up to length 12."""

    def run() -> tuple[bool, str]:
        problems = []
        total = 0
        for n in ns:
            g = graph("caffine", n)
            brute = _irreducible_set(g, max_len)
            listed = set(classified_irreducibles(g, max_len))
            total += len(brute)
            if brute != listed:
                extra = sorted(format_word(e.word) for e in listed - brute)
                missing = sorted(format_word(e.word) for e in brute - listed)
                problems.append(f"{g.describe()}: extra={extra[:5]} missing={missing[:5]}")
        detail = "; ".join(problems) if problems else f"sets equal ({total} irreducibles overall)"
        return not problems, detail

    return _timed("classification-affineC", run)


def check_diagram_relations(ns: Iterable[int] = (2, 3, 4, 5, 6)) -> CheckResult:
    """Criterion 4: the four defining relation families hold as diagram
    identities for every applicable generator pair."""

    def run() -> tuple[bool, str]:
        problems = []
        checked = 0
        for n in ns:
            g = graph("caffine", n)
            gens = list(g.generators)
            for i in gens:
                di = plain(simple_diagram(g, i))
                sq = act_simple(Side.LEFT, i, di)
                checked += 1
                if sq != DiagramResult(0, 1, di.diagram):
                    problems.append(f"n={n}: d{i}^2 != delta d{i}")
            for i in gens:
                for j in gens:
                    if j <= i:
                        continue
                    m = g.bond(i, j)
                    checked += 1
                    if m == 2:
                        if from_generator_word(g, (i, j)) != from_generator_word(g, (j, i)):
                            problems.append(f"n={n}: d{i}d{j} != d{j}d{i}")
                    elif m == 3:
                        for s, t in ((i, j), (j, i)):
                            if from_generator_word(g, (s, t, s)) != plain(simple_diagram(g, s)):
                                problems.append(f"n={n}: d{s}d{t}d{s} != d{s}")
                    else:
                        for s, t in ((i, j), (j, i)):
                            lhs = from_generator_word(g, (s, t, s, t))
                            rhs = from_generator_word(g, (s, t))
                            if lhs.diagram != rhs.diagram or lhs.scalars() != (1, 0) or rhs.scalars() != (0, 0):
                                problems.append(f"n={n}: d{s}d{t}d{s}d{t} != 2 d{s}d{t}")
        detail = "; ".join(problems) if problems else f"all relation instances hold ({checked} pairs)"
        return not problems, detail

    return _timed("diagram-relations", run)


FAITHFULNESS_SWEEPS = ((2, 12), (3, 12), (4, 10))


def check_faithfulness(sweeps=FAITHFULNESS_SWEEPS) -> list[CheckResult]:
    """Criterion 5: zero scalar / collision / descent-edge failures."""
    out = []
    for n, max_len in sweeps:
        start = time.time()
        g = graph("caffine", n)
        report = verify_faithfulness(g, max_len)
        counts: dict[int, int] = {}
        avals: list[int] = []
        for e in enumerate_fc(g, max_len):
            counts[e.length] = counts.get(e.length, 0) + 1
            avals.append(from_generator_word(g, e.word).diagram.a_value())
        detail = (
            f"checked={report.checked} scalar={len(report.scalar_failures)}"
            f" collisions={len(report.collision_failures)} descent={len(report.descent_failures)}"
            f" admissibility={len(report.admissibility_failures)}"
        )
        result = CheckResult(
            f"faithfulness-c{n}-len{max_len}",
            report.passed,
            detail,
            time.time() - start,
            counts_by_length=counts,
            a_values=avals,
        )
        out.append(result)
    return out


def check_coherence(seed: int = 0, samples: int = 10_000, max_len: int = 20) -> CheckResult:
    """Criterion 6: normalize_word and from_generator_word agree on scalars
    and on theta-matched element/diagram pairs for seeded random words."""

    def run() -> tuple[bool, str]:
        rng = random.Random(seed)
        image: dict[FcElement, AdmissibleDiagram] = {}
        for _ in range(samples):
            n = rng.randint(2, 5)
            g = graph("caffine", n)
            word = tuple(rng.randint(1, n + 1) for _ in range(rng.randint(0, max_len)))
            tlm = normalize_word(g, word)
            dgr = from_generator_word(g, word)
            if (tlm.two_exp, tlm.delta_exp) != dgr.scalars():
                return False, f"scalar mismatch on {word} (n={n})"
            key = tlm.element
            if key not in image:
                image[key] = from_generator_word(g, key.word).diagram
            if image[key] != dgr.diagram:
                return False, f"diagram mismatch on {word} (n={n})"
        return True, f"{samples} random words agree (seed {seed})"

    return _timed("tl-diagram-coherence", run)


def check_confluence(seed: int = 0, samples: int = 1000, max_len: int = 25, orders: int = 10) -> CheckResult:
    """Criterion 7: random redex orders normalize decoration words identically."""

    def run() -> tuple[bool, str]:
        rng = random.Random(seed)
        for _ in range(samples):
            word = "".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len)))
            reference = deco_normal_form(word)
            for _ in range(orders):
                other = normal_form_random_order(word, rng)
                if other != reference:
                    return False, f"non-confluent reduction of {word!r}"
        return True, f"{samples} words x {orders} orders agree (seed {seed})"

    return _timed("decoration-confluence", run)


def check_factorization_roundtrip(sweeps=FAITHFULNESS_SWEEPS) -> CheckResult:
    """Criterion 8: from_generator_word(factor_into_simples(d)) = (0,0,d)
    over the faithfulness sweeps."""

    def run() -> tuple[bool, str]:
        total = 0
        for n, max_len in sweeps:
            g = graph("caffine", n)
            for e in enumerate_fc(g, max_len):
                d = from_generator_word(g, e.word).diagram
                word = factor_into_simples(d)
                if from_generator_word(g, word) != plain(d):
                    return False, f"round trip failed for {format_word(e.word)} (n={n})"
                total += 1
        return True, f"{total} diagrams reconstructed exactly"

    return _timed("factorization-roundtrip", run)


def check_structural_invariants(sweeps=FAITHFULNESS_SWEEPS) -> CheckResult:
    """Criterion 9: n-value preservation under weak star moves, the
    multiplicative reversal identities, and a=1 iff type I."""

    def run() -> tuple[bool, str]:
        moves_checked = 0
        elements = 0
        for n, max_len in sweeps:
            g = graph("caffine", n)
            for e in enumerate_fc(g, max_len):
                elements += 1
                if not e.is_identity:
                    d = from_generator_word(g, e.word).diagram
                    if (d.a_value() == 1) != (is_type_I(e) is not None):
                        return False, f"a-value/type-I mismatch at {format_word(e.word)} (n={n})"
                for side in (Side.LEFT, Side.RIGHT):
                    for s in g.generators:
                        for t in g.neighbors(s):
                            move = StarMove(side, s, t)
                            reduced = apply_weak_star(e, move)
                            if reduced is None:
                                continue
                            moves_checked += 1
                            if n_value(e) != n_value(reduced):
                                return False, f"n-value changed by {move.text()} at {format_word(e.word)}"
                            if not weak_star_reverse_check(e, move):
                                return False, f"reversal identity failed for {move.text()} at {format_word(e.word)}"
        return True, f"{moves_checked} weak star moves over {elements} elements"

    return _timed("structural-invariants", run)


def paper_discrepancy_notes() -> list[str]:
    """Informational: the alternating-stack n-value as stated versus the
    maximum antichain the implementation computes."""
    notes = []
    for n in (2, 3, 4, 5):
        g = graph("caffine", n)
        stated = paper_type_ii_n_value(g)
        computed = len(odd_indices(g))
        notes.append(
            f"note: alternating-stack n-value over {g.describe()}:"
            f" stated {stated}, computed antichain {computed}"
        )
    return notes


def full_suite(seed: int = 0) -> list[CheckResult]:
    results = [
        check_enumeration_oracle(),
        check_classification_b(),
        check_classification_affine(),
        check_diagram_relations(),
    ]
    results.extend(check_faithfulness())
    results.append(check_coherence(seed=seed))
    results.append(check_confluence(seed=seed))
    results.append(check_factorization_roundtrip())
    results.append(check_structural_invariants())
    return results
