"""Exact and floating-point tools for an inductive renorming of l_1-sums."""

from .norm import (
    NormValue,
    distance,
    distance_matrix,
    isomorphism_check,
    l1_sum_norm,
    norm,
    prefix_norms,
    sandwich_bounds,
    strict_lower_check,
    terenzi_norm,
)
from .representation import (
    BranchPattern,
    Cmp,
    HypothesisFailed,
    Relation,
    Representation,
    ZeroVectorError,
    branch_pattern,
    common_choice,
    extract_representation,
    same_representation,
    select_common_pattern,
    tail_formula_check,
)
from .spaces import SCALAR_FAMILY, ComponentSpec, SpaceFamily, block_norm, component_at, unconditionality_check
from .vectors import BlockVector, add, basis_vector, dense, make_vector, prefix, scale, sign_flip, sub, zero_vector

__version__ = "0.1.0"

__all__ = [
    "SCALAR_FAMILY",
    "BlockVector",
    "BranchPattern",
    "Cmp",
    "ComponentSpec",
    "HypothesisFailed",
    "NormValue",
    "Relation",
    "Representation",
    "SpaceFamily",
    "ZeroVectorError",
    "add",
    "basis_vector",
    "block_norm",
    "branch_pattern",
    "common_choice",
    "component_at",
    "dense",
    "distance",
    "distance_matrix",
    "extract_representation",
    "isomorphism_check",
    "l1_sum_norm",
    "make_vector",
    "norm",
    "prefix",
    "prefix_norms",
    "same_representation",
    "sandwich_bounds",
    "scale",
    "select_common_pattern",
    "sign_flip",
    "strict_lower_check",
    "sub",
    "tail_formula_check",
    "terenzi_norm",
    "unconditionality_check",
    "zero_vector",
]
