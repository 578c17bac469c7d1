"""Exact Hodge-Laplace spectra on p-forms of compact flat manifolds given
as Bieberbach groups over the cubic lattice."""

from .arith import GaussianInt, binomial, quarter_root_power
from .bieberbach import (
    BieberbachGroup,
    GroupValidationError,
    HolonomyExpansionError,
    IsometryElement,
    SignedPermutation,
    ValidationReport,
    classify_holonomy,
    expand_holonomy,
    group_from_json,
    is_diagonal_type,
    is_orientable,
    is_torsion_free,
    validate,
    validate_generators,
)
from .families import (
    GhwArray,
    catalog,
    catalog_names,
    diagonal_group,
    hw_groups,
    kn_family,
    kn_group_from_array,
    torus,
    z2_family,
    z2_family_size,
    z2_group,
)
from .graphs import GhwGraph, canonical_vertex_order, graph_of, graphs_isomorphic, to_dot
from .lattice import Shell, ShellCapExceeded, fixed_space_dim, fixed_vectors, shell_vectors
from .spectra import (
    MultiplicityRow,
    betti,
    betti_numbers,
    character_sum,
    compare_spectra,
    d_e,
    d_f,
    d_o,
    d_p,
    krawtchouk,
    krawtchouk_table,
    theorem_check,
    trace_p,
    trace_p_oracle,
    z2_closed_forms,
)

__version__ = "0.1.0"

__all__ = [
    "BieberbachGroup",
    "GaussianInt",
    "GhwArray",
    "GhwGraph",
    "GroupValidationError",
    "HolonomyExpansionError",
    "IsometryElement",
    "MultiplicityRow",
    "Shell",
    "ShellCapExceeded",
    "SignedPermutation",
    "ValidationReport",
    "betti",
    "betti_numbers",
    "binomial",
    "canonical_vertex_order",
    "catalog",
    "catalog_names",
    "character_sum",
    "classify_holonomy",
    "compare_spectra",
    "d_e",
    "d_f",
    "d_o",
    "d_p",
    "diagonal_group",
    "expand_holonomy",
    "fixed_space_dim",
    "fixed_vectors",
    "graph_of",
    "graphs_isomorphic",
    "group_from_json",
    "hw_groups",
    "is_diagonal_type",
    "is_orientable",
    "is_torsion_free",
    "kn_family",
    "kn_group_from_array",
    "krawtchouk",
    "krawtchouk_table",
    "quarter_root_power",
    "shell_vectors",
    "theorem_check",
    "to_dot",
    "torus",
    "trace_p",
    "trace_p_oracle",
    "validate",
    "validate_generators",
    "z2_closed_forms",
    "z2_family",
    "z2_family_size",
    "z2_group",
]
