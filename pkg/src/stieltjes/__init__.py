"""Exact Stieltjes continued fractions of automatic sign sequences."""

from .cfrac import (
    CoefficientTable,
    ConvergentPair,
    b_convergents,
    block_product,
    coefficient_table,
    convergent,
    convergents,
    expand_stieltjes,
    matrix_product_convergents,
)
from .closedform import catalan_mod4, phi_series, theorem1_rhs, theorem2_rhs
from .render import RenderSpec, render_table
from .ring import QQ, ZZ, Domain, Poly, Series, Zmod
from .seq import PAPERFOLDING, RUDIN_SHAPIRO, SignSequence, SubstitutionSystem, get_sequence, kernel_estimate
from .verify import run_target

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable",
    "ConvergentPair",
    "b_convergents",
    "block_product",
    "coefficient_table",
    "convergent",
    "convergents",
    "expand_stieltjes",
    "matrix_product_convergents",
    "catalan_mod4",
    "phi_series",
    "theorem1_rhs",
    "theorem2_rhs",
    "RenderSpec",
    "render_table",
    "QQ",
    "ZZ",
    "Domain",
    "Poly",
    "Series",
    "Zmod",
    "PAPERFOLDING",
    "RUDIN_SHAPIRO",
    "SignSequence",
    "SubstitutionSystem",
    "get_sequence",
    "kernel_estimate",
    "run_target",
]
