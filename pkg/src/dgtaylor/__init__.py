"""Taylor, Koszul, tensor and generalized Taylor resolutions of monomial ideals,
with DG algebra products, divided powers, and exact verification."""

from .axioms import Budget, check_dg_axiom, check_dg_axioms, check_gamma_axiom, check_gamma_axioms
from .chainmaps import (ChainMap, check_map_property, check_map_properties, comparison_map,
                        identity_map, inclusion_map, taylor_iso)
from .complex import BasisElement, Element, FreeComplex, Label, Poly
from .constructions import (SignMode, StructureConstants, extract_structure_constants,
                            koszul_principal, star_product, taylor, tensor_product)
from .dg_gamma import DGGammaAlgebra, divided_power, multiply, power
from .linalg import DenseMatrix, rank
from .monomial import Monomial, VarContext, gcd, lcm, lcm_closure, parse, quotient
from .report import CheckResult, Report, Violation
from .scarf import ScarfComplex, check_scarf_gamma, scarf_subcomplex, sqf_decompose

__all__ = [
    "BasisElement", "Budget", "ChainMap", "CheckResult", "DGGammaAlgebra", "DenseMatrix",
    "Element", "FreeComplex", "Label", "Monomial", "Poly", "Report", "ScarfComplex", "SignMode",
    "StructureConstants", "VarContext", "Violation", "check_dg_axiom", "check_dg_axioms",
    "check_gamma_axiom", "check_gamma_axioms", "check_map_properties", "check_map_property",
    "check_scarf_gamma", "comparison_map", "divided_power", "extract_structure_constants", "gcd",
    "identity_map", "inclusion_map", "koszul_principal", "lcm", "lcm_closure", "multiply", "parse",
    "power", "quotient", "rank", "scarf_subcomplex", "sqf_decompose", "star_product", "taylor",
    "taylor_iso", "tensor_product",
]
