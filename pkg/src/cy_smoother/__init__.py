"""Exact-arithmetic invariants of Calabi-Yau 3-folds built by smoothing
two-component normal crossing degenerations."""

__version__ = "0.1.0"

from .exact_lattice import (
    FgAbelianGroup,
    IntMatrix,
    kernel_basis,
    pairing_is_unimodular,
    quotient,
    smith_normal_form,
)
from .surface import CurveClass, K3Model, curve_genus, intersect
from .components import (
    BaseThreefold,
    BlownComponent,
    P3,
    build_component,
    c2_pair,
    euler_number,
    triple_product,
)
from .smoothing import (
    NormalCrossingModel,
    SmoothingReport,
    analyze,
    check_smoothability,
    compute_rg2,
    compute_rg4_and_consur,
    cubic_form,
    c2_form,
    hodge_numbers,
    move_top_center,
)
from .invariant_forms import (
    CubicTensor,
    CyInvariantTriple,
    aronhold_ST,
    deformation_group,
    forms_distinguishable,
    rr_dimension,
)
from .catalog import (
    FanoFamily,
    cy_invariants,
    known_cy_table,
    load_catalog,
    search_pairs,
    xi_examples,
)

__all__ = [
    "FgAbelianGroup",
    "IntMatrix",
    "kernel_basis",
    "pairing_is_unimodular",
    "quotient",
    "smith_normal_form",
    "CurveClass",
    "K3Model",
    "curve_genus",
    "intersect",
    "BaseThreefold",
    "BlownComponent",
    "P3",
    "build_component",
    "c2_pair",
    "euler_number",
    "triple_product",
    "NormalCrossingModel",
    "SmoothingReport",
    "analyze",
    "check_smoothability",
    "compute_rg2",
    "compute_rg4_and_consur",
    "cubic_form",
    "c2_form",
    "hodge_numbers",
    "move_top_center",
    "CubicTensor",
    "CyInvariantTriple",
    "aronhold_ST",
    "deformation_group",
    "forms_distinguishable",
    "rr_dimension",
    "FanoFamily",
    "cy_invariants",
    "known_cy_table",
    "load_catalog",
    "search_pairs",
    "xi_examples",
]
