"""Trees of computations and their interpretation in l2(G_N)."""

from .checks import (
    iterated_exp,
    kalmar_bound_check,
    trees_at_length,
    verify_final_injectivity,
    verify_norm_and_coefficients,
    verify_normalization,
    verify_simulation,
    verify_step_commutation,
    verify_support_agreement,
    verify_tree,
    verify_uniformity,
)
from .dump import tree_dump
from .embed import (
    BasisAssignment,
    alpha,
    assign_basis,
    assign_basis_union,
    basis_vector,
    embed_at,
    embed_config,
    embed_input,
    step_operator,
    step_power,
)
from .tree import (
    Branch,
    InputSet,
    Node,
    VirtualConfig,
    VirtualTree,
    build_virtual_tree,
    inputs_for,
    leaves,
    survey,
)

__all__ = [
    "BasisAssignment", "Branch", "InputSet", "Node", "VirtualConfig", "VirtualTree",
    "alpha", "assign_basis", "assign_basis_union", "basis_vector", "build_virtual_tree",
    "embed_at", "embed_config", "embed_input", "inputs_for", "iterated_exp",
    "kalmar_bound_check", "leaves", "step_operator", "step_power", "survey", "tree_dump",
    "trees_at_length", "verify_final_injectivity", "verify_norm_and_coefficients",
    "verify_normalization", "verify_simulation", "verify_step_commutation",
    "verify_support_agreement", "verify_tree", "verify_uniformity",
]
