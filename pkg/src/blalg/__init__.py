"""Workbench for finite-dimensional Banach lattice algebras.

Elements live in ``R^n`` with the coordinatewise order; products are given
by structure constants; all scalars are exact rationals except in
:mod:`blalg.complexify`.
"""
from .algebra import (AlgebraSpec, AxiomReport, BilinearMap, StructureTensor, arens_adjoint, arens_products,
                      check_axioms, classify_f_algebra, find_identity, multiply)
from .constructions import ast_product, gallery, ideal_Ae, star_product
from .lattice import Element, Functional, NormSpec, band_projection, dual_norm, norm
from .representation import (ConstraintSystem, classify_am_algebra, forced_zero_coordinates, martignon_products,
                             quotient_representation, represent_am_unit, subalgebra_check)

__all__ = [
    "AlgebraSpec", "AxiomReport", "BilinearMap", "ConstraintSystem", "Element", "Functional", "NormSpec",
    "StructureTensor", "arens_adjoint", "arens_products", "ast_product", "band_projection", "check_axioms",
    "classify_am_algebra", "classify_f_algebra", "dual_norm", "find_identity", "forced_zero_coordinates",
    "gallery", "ideal_Ae", "martignon_products", "multiply", "norm", "quotient_representation",
    "represent_am_unit", "star_product", "subalgebra_check",
]
