"""The homomorphism from the monomial-basis algebra to the diagram algebra,
and the desk-scale faithfulness verification built on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coxeter import CoxeterGraph, FcElement, Side, canonical_form, enumerate_fc, format_word
from .diagram import (
    AdmissibleDiagram,
    DiagramElement,
    DiagramResult,
    descent_indices,
    factor_into_simples,
    from_generator_word,
    validate_admissible,
)
from .heap import is_type_I
from .tl import TLElement, normalize_word


class ThetaInvariantError(RuntimeError):
    """A computation contradicted a theorem-level guarantee (a bug)."""


def theta_monomial(e: FcElement) -> AdmissibleDiagram:
    """Image diagram of a basis monomial; always scalar-free."""
    r = from_generator_word(e.graph, e.word)
    if r.scalars() != (0, 0):
        raise ThetaInvariantError(
            f"monomial image of {format_word(e.word)} carries scalars {r.scalars()}"
        )
    return r.diagram


def theta_element(x: TLElement) -> DiagramElement:
    out: dict[AdmissibleDiagram, object] = {}
    for e, poly in x.terms:
        d = theta_monomial(e)
        out[d] = out[d] + poly if d in out else poly
    n = x.graph.n
    return DiagramElement.from_dict(n, out)


def descent_edge_check(e: FcElement) -> bool:
    """Descents of the element match the simple edges of its diagram exactly."""
    d = theta_monomial(e)
    north = frozenset(descent_indices(d, south=False))
    south = frozenset(descent_indices(d, south=True))
    return north == e.left_descents() and south == e.right_descents()


def inverse_theta(d: AdmissibleDiagram) -> FcElement:
    """The unique fc element whose monomial maps to d."""
    word = factor_into_simples(d)
    m = normalize_word(_graph_of(d), word)
    if (m.two_exp, m.delta_exp) != (0, 0):
        raise ThetaInvariantError("factorization word normalized with scalars")
    if theta_monomial(m.element) != d:
        raise ThetaInvariantError("inverse image does not map back to the diagram")
    return m.element


def _graph_of(d: AdmissibleDiagram) -> CoxeterGraph:
    from .coxeter import GraphKind

    return CoxeterGraph(GraphKind.CAFFINE, d.n)


@dataclass
class ThetaReport:
    graph: CoxeterGraph
    max_len: int
    checked: int = 0
    scalar_failures: list[str] = field(default_factory=list)
    collision_failures: list[tuple[str, str]] = field(default_factory=list)
    descent_failures: list[str] = field(default_factory=list)
    admissibility_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.scalar_failures
            or self.collision_failures
            or self.descent_failures
            or self.admissibility_failures
        )

    def summary_lines(self) -> list[str]:
        lines = [
            f"graph={self.graph.describe()} max_len={self.max_len} checked={self.checked}",
            f"scalar_failures={len(self.scalar_failures)}",
            f"collisions={len(self.collision_failures)}",
            f"descent_failures={len(self.descent_failures)}",
            f"admissibility_failures={len(self.admissibility_failures)}",
            f"result={'PASS' if self.passed else 'FAIL'}",
        ]
        for w in self.scalar_failures[:10]:
            lines.append(f"  scalar: {w}")
        for w1, w2 in self.collision_failures[:10]:
            lines.append(f"  collision: {w1} vs {w2}")
        for w in self.descent_failures[:10]:
            lines.append(f"  descent: {w}")
        for w in self.admissibility_failures[:10]:
            lines.append(f"  admissible: {w}")
        return lines


def verify_faithfulness(g: CoxeterGraph, max_len: int) -> ThetaReport:
    """Sweep all fc elements up to the length bound: images must be single
    admissible diagrams, pairwise distinct, with matching descent edges."""
    report = ThetaReport(g, max_len)
    seen: dict[AdmissibleDiagram, FcElement] = {}
    for e in enumerate_fc(g, max_len):
        report.checked += 1
        name = format_word(e.word) or "e"
        r = from_generator_word(g, e.word)
        if r.scalars() != (0, 0):
            report.scalar_failures.append(name)
            continue
        d = r.diagram
        problems = validate_admissible(d)
        if problems:
            report.admissibility_failures.append(f"{name}: {problems[0]}")
        if d in seen:
            other = format_word(seen[d].word) or "e"
            report.collision_failures.append((name, other))
        else:
            seen[d] = e
        north = frozenset(descent_indices(d, south=False))
        south = frozenset(descent_indices(d, south=True))
        if north != e.left_descents() or south != e.right_descents():
            report.descent_failures.append(name)
    return report


def type_i_a_value_check(e: FcElement) -> bool:
    """a(d_w) = 1 exactly for the zigzag elements."""
    if e.is_identity:
        return True
    d = theta_monomial(e)
    return (d.a_value() == 1) == (is_type_I(e) is not None)
