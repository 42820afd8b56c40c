"""Exact Poincare polynomials of partial flag manifolds and of genus-zero
stable map spaces into them, by torus fixed points and by closed forms."""

from .bbsum import PoincareReport, compare, poincare_closed_form, poincare_enumeration
from .flagcore import FlagShape, enumerate_index_tuples, flag_poincare, n_statistic
from .kernels import BACKEND
from .modulifixed import UnsupportedDegreeError, classify_degree, enumerate_fixed_maps
from .polyq import IntPolynomial, q_binomial, q_multinomial, q_number

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FlagShape", "IntPolynomial", "PoincareReport",
    "UnsupportedDegreeError", "classify_degree", "compare",
    "enumerate_fixed_maps", "enumerate_index_tuples", "flag_poincare",
    "n_statistic", "poincare_closed_form", "poincare_enumeration",
    "q_binomial", "q_multinomial", "q_number",
]
