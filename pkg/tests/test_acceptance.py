"""Acceptance criteria, one test per criterion.

All statements are exact algebraic identities, so every comparison is exact
equality; the stated runtime budgets are asserted as generous upper bounds.
Each test prints its check's summary line (visible with -s or on failure).
"""

from __future__ import annotations

from tlac import verify
from tlac.coxeter import Side, bn_oracle_counts, canonical_form, enumerate_fc, graph
from tlac.diagram import DiagramResult, from_generator_word, plain, simple_diagram
from tlac.tl import TLMonomial, monomial, mult_generator, normalize_word


def _report(result: verify.CheckResult, budget: float) -> None:
    print(result.text_line())
    assert result.passed, result.detail
    assert result.seconds < budget, f"{result.name} exceeded {budget}s ({result.seconds:.1f}s)"


def test_criterion_01_enumeration_oracle():
    result = verify.check_enumeration_oracle()
    _report(result, 10.0)
    by_len: dict[int, int] = {}
    for e in enumerate_fc(graph("b", 2), 4):
        by_len[e.length] = by_len.get(e.length, 0) + 1
    assert sum(by_len.values()) == 7
    assert by_len == bn_oracle_counts(2, 4)


def test_criterion_02_classification_type_b():
    _report(verify.check_classification_b(), 60.0)


def test_criterion_03_classification_affine_c():
    _report(verify.check_classification_affine(), 300.0)


def test_criterion_04_diagram_relations():
    _report(verify.check_diagram_relations(), 10.0)


def test_criterion_05_faithfulness_sweeps():
    results = verify.check_faithfulness()
    total = 0.0
    for result in results:
        print(result.text_line())
        assert result.passed, result.detail
        total += result.seconds
    assert total < 600.0


def test_criterion_06_algebra_diagram_coherence():
    _report(verify.check_coherence(seed=0, samples=10_000, max_len=20), 120.0)


def test_criterion_07_decoration_confluence():
    _report(verify.check_confluence(seed=0, samples=1000, max_len=25, orders=10), 5.0)


def test_criterion_08_factorization_round_trip():
    # Budgeted inside criterion 5's allowance.
    _report(verify.check_factorization_roundtrip(), 600.0)


def test_criterion_09_structural_invariants():
    _report(verify.check_structural_invariants(), 600.0)


def test_criterion_10_worked_paper_examples():
    # The headline worked examples; the per-module suites carry the rest.
    c3, c4, c5 = graph("caffine", 3), graph("caffine", 4), graph("caffine", 5)

    # b2 * b_{1213} = 2 b_{213}.
    out = mult_generator(Side.LEFT, 2, monomial(canonical_form(c4, (1, 2, 1, 3))))
    assert out == TLMonomial(1, 0, canonical_form(c4, (2, 1, 3)))

    # Canonical rows of the worked heap example.
    assert canonical_form(c5, (3, 2, 1, 2, 5, 4, 6, 5)).rows == ((3, 5), (2, 4, 6), (1, 5), (2,))

    # The B2 irreducible list.
    from tlac.starops import is_irreducible

    b2 = graph("b", 2)
    assert {e.word for e in enumerate_fc(b2, 4) if is_irreducible(e)} == {
        (),
        (1,),
        (2,),
        (1, 2),
        (2, 1),
    }

    # Full commutativity verdicts of the worked word pair.
    from tlac.coxeter import is_fc_reduced

    assert not is_fc_reduced(c3, (1, 3, 2, 1, 2))
    assert is_fc_reduced(c3, (1, 2, 1, 3, 2))

    # Defining relations as normalized products.
    assert normalize_word(c4, (1, 2, 1, 2)) == TLMonomial(1, 0, canonical_form(c4, (1, 2)))
    assert normalize_word(c4, (2, 2)) == TLMonomial(0, 1, canonical_form(c4, (2,)))
    assert normalize_word(c4, (2, 3, 2)) == TLMonomial(0, 0, canonical_form(c4, (2,)))

    # Diagram-side relation instances.
    assert from_generator_word(c4, (1, 2, 1, 2)).scalars() == (1, 0)
    assert from_generator_word(c4, (3, 3)) == DiagramResult(0, 1, simple_diagram(c4, 3))

    print("[PASS] worked-paper-examples: headline identities hold")
