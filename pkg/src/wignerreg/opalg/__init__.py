"""Exact algebra of polynomial-coefficient differential operators."""

from .kernel import (
    KernelSpec,
    cohen_bar,
    cohen_bar_inverse,
    cohen_tilde,
    cohen_tilde_inverse,
    kernel_operators,
    left_divide_fourier,
    operator_A,
    q1_tilde,
)
from .ncpoly import (
    NCPolynomial,
    apply_symbolic,
    commutator,
    generators,
    multiply,
    normal_order,
    twisted_laplacian,
)
from .numbers import QQi
from .poly import Polynomial
from .substitution import (
    CommutationError,
    SubstitutionMap,
    bar_map,
    substitute,
    tilde_map,
    wig_bar,
    wig_bar_inverse,
    wig_tilde,
    wig_tilde_inverse,
)

__all__ = [
    "CommutationError", "KernelSpec", "NCPolynomial", "Polynomial", "QQi", "SubstitutionMap",
    "apply_symbolic", "bar_map", "cohen_bar", "cohen_bar_inverse", "cohen_tilde",
    "cohen_tilde_inverse", "commutator", "generators", "kernel_operators", "left_divide_fourier",
    "multiply", "normal_order", "operator_A", "q1_tilde", "substitute", "tilde_map",
    "twisted_laplacian", "wig_bar", "wig_bar_inverse", "wig_tilde", "wig_tilde_inverse",
]
