"""Temperley-Lieb algebra of type affine C, two ways: generator-relation
rewriting on the monomial basis, and a decorated planar diagram calculus,
with a verified scalar-free correspondence between the two."""

from .coxeter import (
    CoxeterGraph,
    FcElement,
    GraphKind,
    Side,
    bn_oracle_counts,
    canonical_form,
    descents,
    enumerate_fc,
    graph,
    identity,
    is_fc_reduced,
    parse_word,
)
from .diagram import (
    AdmissibleDiagram,
    DiagramResult,
    act_simple,
    factor_into_simples,
    from_generator_word,
    identity_diagram,
    multiply,
    render_diagram,
    shape_and_stat,
    simple_diagram,
    validate_admissible,
)
from .heap import (
    Heap,
    TypeIDescriptor,
    TypeIIDescriptor,
    build_heap,
    is_type_I,
    is_type_II,
    make_type_I,
    make_type_II,
    n_value,
    render_heap,
)
from .starops import (
    ReductionTrace,
    StarMove,
    apply_star,
    apply_weak_star,
    classified_irreducibles,
    is_irreducible,
    reduce_to_irreducible,
)
from .theta import (
    ThetaReport,
    descent_edge_check,
    inverse_theta,
    theta_element,
    theta_monomial,
    verify_faithfulness,
)
from .tl import (
    DeltaPoly,
    TLElement,
    TLMonomial,
    monomial,
    mult_generator,
    normalize_word,
    tl_multiply,
    weak_star_reverse_check,
)
from .verlinde import NormalDeco, chebyshev_u, deco_concat, deco_normal_form, deco_reverse

__all__ = [name for name in dir() if not name.startswith("_")]
