"""Graphs, fc-reduced words, canonical forms, enumeration, and the type B oracle."""

from __future__ import annotations

import random

import pytest

from tlac.coxeter import (
    Side,
    bn_oracle_counts,
    canonical_form,
    descents,
    enumerate_fc,
    graph,
    identity,
    is_fc_reduced,
    parse_rows,
    parse_word,
    signed_perm_table,
)

C2 = graph("caffine", 2)
C3 = graph("caffine", 3)
C4 = graph("caffine", 4)
C5 = graph("caffine", 5)
B2 = graph("b", 2)
B3 = graph("b", 3)


def test_bond_table():
    assert C3.bond(1, 2) == 4
    assert C3.bond(3, 4) == 4
    assert C3.bond(2, 3) == 3
    assert C3.bond(1, 3) == 2
    assert C3.bond(2, 2) == 1
    assert B3.bond(1, 2) == 4
    assert B3.bond(2, 3) == 3
    assert graph("bprime", 3).bond(3, 4) == 4
    assert graph("a", 3).bond(1, 2) == 3


def test_bad_ranks_and_indices():
    with pytest.raises(ValueError):
        graph("caffine", 1)
    with pytest.raises(ValueError):
        C3.bond(0, 1)
    with pytest.raises(ValueError):
        is_fc_reduced(C3, (1, 5))


def test_fc_examples_from_worked_case():
    assert not is_fc_reduced(C3, (1, 3, 2, 1, 2))
    assert is_fc_reduced(C3, (1, 2, 1, 3, 2))
    assert is_fc_reduced(C3, ())


def test_literal_braid_factors_rejected():
    assert not is_fc_reduced(C4, (2, 3, 2))
    assert not is_fc_reduced(C4, (1, 2, 1, 2))
    assert not is_fc_reduced(C4, (4, 5, 4, 5))
    assert is_fc_reduced(C4, (1, 2, 1))  # bond 4 allows s t s
    assert not is_fc_reduced(C4, (1, 1))


def test_canonical_form_rows():
    e = canonical_form(C5, (3, 2, 1, 2, 5, 4, 6, 5))
    assert e.rows == ((3, 5), (2, 4, 6), (1, 5), (2,))
    assert e.rows_text() == "3 5|2 4 6|1 5|2"
    assert canonical_form(C3, (2,)).rows == ((2,),)
    assert canonical_form(C3, (1, 3)) == canonical_form(C3, (3, 1))
    with pytest.raises(ValueError):
        canonical_form(C3, (1, 3, 2, 1, 2))


def test_commutation_move_invariance():
    rng = random.Random(0)
    for _ in range(200):
        n = rng.choice([2, 3, 4])
        g = graph("caffine", n)
        word = [rng.randint(1, n + 1) for _ in range(rng.randint(2, 10))]
        if not is_fc_reduced(g, word):
            continue
        base = canonical_form(g, word)
        for p in range(len(word) - 1):
            if g.commutes(word[p], word[p + 1]):
                swapped = word[:p] + [word[p + 1], word[p]] + word[p + 2 :]
                assert canonical_form(g, swapped) == base


def test_descents():
    e = canonical_form(B3, (1, 3, 2, 1))
    assert descents(e, Side.LEFT) == {1, 3}
    assert descents(e, Side.RIGHT) == {1}
    single = canonical_form(C3, (2,))
    assert descents(single, Side.LEFT) == descents(single, Side.RIGHT) == {2}


def test_descents_against_commutation_class():
    # Brute force over the commutation class of a fixed word.
    word = (3, 5, 2, 4, 6, 1, 2)
    seen = {word}
    frontier = [word]
    while frontier:
        w = frontier.pop()
        for p in range(len(w) - 1):
            if C5.commutes(w[p], w[p + 1]):
                s = w[:p] + (w[p + 1], w[p]) + w[p + 2 :]
                if s not in seen:
                    seen.add(s)
                    frontier.append(s)
    first_letters = {w[0] for w in seen}
    e = canonical_form(C5, word)
    assert descents(e, Side.LEFT) == first_letters == {3, 5}


def test_first_row_is_left_descent_set():
    for e in enumerate_fc(C3, 6):
        if not e.is_identity:
            assert frozenset(e.rows[0]) == e.left_descents()


def test_prepending_descent_is_reducible():
    for e in enumerate_fc(C3, 6):
        for s in e.left_descents():
            assert not is_fc_reduced(C3, (s,) + e.word)


def test_enumerate_b2():
    elements = enumerate_fc(B2, 4)
    assert len(elements) == 7
    assert enumerate_fc(C3, 0) == [identity(C3)]


def test_enumerate_c2_against_word_search():
    # Independent depth-3 search over raw words with canonical dedup.
    expected = set()
    frontier = [()]
    for _ in range(3):
        nxt = []
        for word in frontier:
            for i in C2.generators:
                cand = word + (i,)
                if is_fc_reduced(C2, cand):
                    nxt.append(cand)
        frontier = nxt
        expected.update(canonical_form(C2, w) for w in frontier)
    mine = {e for e in enumerate_fc(C2, 3) if not e.is_identity}
    assert mine == expected


def test_signed_perm_table():
    table = signed_perm_table(2)
    assert len(table.lengths) == 8
    assert table.lengths[(1, 2)] == 0
    assert sorted(table.lengths.values()) == [0, 1, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ValueError):
        signed_perm_table(7)


def test_signed_perm_cayley_neighbors():
    from tlac.coxeter import _bperm_apply

    table = signed_perm_table(3)
    assert len(table.lengths) == 48
    for perm, length in table.lengths.items():
        for i in (1, 2, 3):
            assert abs(table.lengths[_bperm_apply(perm, i)] - length) == 1


def test_bn_oracle_counts():
    assert bn_oracle_counts(2, 0) == {0: 1}
    counts = bn_oracle_counts(2, 4)
    assert sum(counts.values()) == 7
    assert counts == {0: 1, 1: 2, 2: 2, 3: 2}
    totals = bn_oracle_counts(3, 9)
    assert sum(totals.values()) == 24
    mine: dict[int, int] = {}
    for e in enumerate_fc(B3, 9):
        mine[e.length] = mine.get(e.length, 0) + 1
    assert totals == mine


def test_word_text_round_trip():
    assert parse_word("1 3 2 1") == (1, 3, 2, 1)
    e = canonical_form(C5, (3, 2, 1, 2, 5, 4, 6, 5))
    assert parse_rows(C5, e.rows_text()) == e
    assert parse_rows(C3, "") == identity(C3)
