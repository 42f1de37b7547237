"""Exact arithmetic, evaluation and Diophantine scans for E-functions.

E-functions are power series ``sum a_n z^n / n!`` with algebraic coefficients
satisfying a linear differential system ``f' = A f`` over a number field.
"""

from .balls import ComplexBall
from .catalog import QI, QSqrt2, bessel_j0, exp, field_from_minpoly, resolve
from .desing import decompose, desingularize, divide_by_poly, singularity_relation, vanishing_certificate
from .dioph import (
    BoundSpec,
    continued_fraction,
    exponent_estimate,
    linear_form_scan,
    liouville_scan,
    norm_linear_form,
    paper_exponent,
    relation_descend,
)
from .efun import (
    DifferentialSystem,
    EFunction,
    EVector,
    conjugate,
    galois_norm,
    linear_combination,
    linear_relation_search,
    multiply,
    normal_basis_decompose,
    reconstruct_from_basis,
)
from .errors import EFuncError
from .exactmath import QQ, NFElement, NumberField
from .numeval import evaluate, evaluate_report, growth_report, linear_form
from .ratfun import Poly, RatFun, RatMatrix, poly_gcd_ext, unimodular_complete

__version__ = "0.1.0"

__all__ = [
    "BoundSpec", "ComplexBall", "DifferentialSystem", "EFuncError", "EFunction", "EVector",
    "NFElement", "NumberField", "Poly", "QI", "QQ", "QSqrt2", "RatFun", "RatMatrix",
    "bessel_j0", "conjugate", "continued_fraction", "decompose", "desingularize",
    "divide_by_poly", "evaluate", "evaluate_report", "exp", "exponent_estimate",
    "field_from_minpoly", "galois_norm", "growth_report", "linear_combination", "linear_form",
    "linear_form_scan", "linear_relation_search", "liouville_scan", "multiply",
    "normal_basis_decompose", "norm_linear_form", "paper_exponent", "poly_gcd_ext",
    "reconstruct_from_basis", "relation_descend", "resolve", "singularity_relation",
    "unimodular_complete", "vanishing_certificate",
]
