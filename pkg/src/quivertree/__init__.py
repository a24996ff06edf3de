"""Exact computations with quiver representations: tree bases, radiation modules,
reflection functors, preprojectives on trees and Kronecker push-downs."""

from .linalg import DEFAULT_PRIME, QQ, Field, LinearAlgebraError, PrimeField, RationalField, field_from_name
from .quiver import Arrow, Quiver, QuiverError, kronecker_quiver, regular_tree_ball
from .rep import (
    Representation,
    RepresentationError,
    direct_sum,
    euler_form,
    ext1_dim,
    ext_cocycle_basis,
    hom_basis,
    hom_dim,
    injective,
    is_exceptional,
    rank_deficient_arrows,
    projective,
    rep_from_json,
    rep_to_json,
    restrict,
    simple,
)
from .reflection import reflect_sink, reflect_source, rho_minus, rho_plus, tau_minus
from .decompose import DecompositionError, decompose, is_indecomposable, is_isomorphic
from .basis import IndexedBasis, coefficient_quiver, is_tree, is_tree_basis, standard_basis, to_dot
from .radiation import (
    analyze_thin_vertex,
    is_radiation,
    radiation_basis,
    radiation_build,
    radiation_tree,
    thin_vertices,
    verify_radiation_basis,
)
from .dynkin import dynkin_quiver, e8_maximal_tree_basis, enumerate_indecomposables, hammock, module_for_root, positive_roots, sweep_thin_radiation
from .preprojective import grow_preprojective_tree, preprojective, preprojective_radiation, preprojective_via_radiation, split_at_origin
from .kronecker import KroneckerRep, ResourceLimitError, dim_recursion_oracle, kron_preinjective, kron_preprojective, push_down
from .schofield import ExceptionalTriple, glue_tree_basis, synthesize

__version__ = "0.1.0"
