"""Exact symbolic computation in partially commutative metabelian Lie
algebras defined by finite graphs."""

from .core import (
    AssocPoly,
    BasisMonomial,
    Bracket,
    Gen,
    GeneratorOrder,
    GluedComponent,
    LieElement,
    RawExpr,
    Scale,
    Sum,
    act,
    basis_monomial_with_start,
    basis_monomials_of_degree,
    basis_monomials_of_multidegree,
    bracket,
    change_order,
    equal,
    format_element,
    glued_decomposition,
    glued_mdeg,
    homogeneous_components,
    is_basis_monomial,
    is_zero,
    mdeg,
    multidegrees,
    normal_form,
    support,
    word_element,
)
from .centralizer import (
    CentralizerSlice,
    check_intersection_theorem,
    classify_cycle_centralizer,
    derived_centralizer,
)
from .equivalence import (
    PhiHom,
    ThetaInstance,
    build_phi_hom,
    check_hombas,
    compaction_witness,
    distinguish_cycles,
    eval_theta,
    gamma_closure,
    lambda_zero,
    phi_lambda,
    search_theta_witness,
    theta_identity_holds,
)
from .errors import (
    AlgebraError,
    CertificationError,
    GraphError,
    ParseError,
    PcmlError,
)
from .graphs import (
    CircIndex,
    CompactionResult,
    Graph,
    Partition,
    build_graph,
    circ_dist,
    circ_distance,
    closed_neighborhood,
    compaction,
    complete_graph,
    connected_components,
    cycle_graph,
    induced_subgraph,
    is_chain,
    parse_graph_spec,
    path_graph,
    perp_classes,
)
from .oracle import certify_basis, graded_dimension, ideal_member
from .textio import parse_assoc_poly, parse_element, print_element

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
