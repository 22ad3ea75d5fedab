"""Finite inverse and Clifford semigroups, weak left braces, and their enumeration."""

from .brace import WeakBrace, check_weak_brace, is_dual, is_skew_brace, lambda_of
from .core import (
    CayleyTable,
    CliffordStructure,
    InverseSemigroup,
    build_clifford,
    is_associative,
    is_clifford,
    magma,
    von_neumann_inverses,
)
from .correspondences import (
    affine_from_brace,
    brace_from_affine,
    brace_from_gamma,
    brace_from_good,
    gamma_from_brace,
    good_from_brace,
    is_affine_structure,
    is_gamma_function,
    is_good_subsemigroup,
)
from .errors import AlgebraError, ImplicationViolation, ParseError
from .fileio import parse_table_text, read_table_file
from .morphisms import EndomorphismMonoid, Holomorph, enumerate_endomorphisms
from .search import (
    enumerate_affine_structures,
    enumerate_gamma_functions,
    enumerate_good_subsemigroups,
    isomorphism_classes,
    oracle_enumerate_braces,
)
from .special import (
    classify,
    compose_semilattice,
    decompose_semilattice,
    is_lambda_anti_homomorphic,
    is_lambda_homomorphic,
    is_symmetric,
)

__all__ = [
    "affine_from_brace",
    "AlgebraError",
    "brace_from_affine",
    "brace_from_gamma",
    "brace_from_good",
    "build_clifford",
    "CayleyTable",
    "check_weak_brace",
    "classify",
    "CliffordStructure",
    "compose_semilattice",
    "decompose_semilattice",
    "EndomorphismMonoid",
    "enumerate_affine_structures",
    "enumerate_endomorphisms",
    "enumerate_gamma_functions",
    "enumerate_good_subsemigroups",
    "gamma_from_brace",
    "good_from_brace",
    "Holomorph",
    "ImplicationViolation",
    "InverseSemigroup",
    "is_affine_structure",
    "is_associative",
    "is_clifford",
    "is_dual",
    "is_gamma_function",
    "is_good_subsemigroup",
    "is_lambda_anti_homomorphic",
    "is_lambda_homomorphic",
    "is_skew_brace",
    "is_symmetric",
    "isomorphism_classes",
    "lambda_of",
    "magma",
    "oracle_enumerate_braces",
    "parse_table_text",
    "ParseError",
    "read_table_file",
    "von_neumann_inverses",
    "WeakBrace",
]

__version__ = "0.1.0"
