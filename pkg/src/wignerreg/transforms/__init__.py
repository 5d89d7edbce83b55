"""FFT-based transforms on uniform grids and the numerical verification bed."""

from .fourier import (
    cohen_apply,
    cohen_inverse,
    fourier,
    fourier_transform,
    inverse_fourier,
    partial_fourier,
    stft,
    symmetric_change,
    symmetric_change_inverse,
    wig,
    wig_inverse,
)
from .grid import FREQ, SPACE, Axis, Grid, GridFunction, relative_error
from .operators import MODES, apply_operator, intertwining_residual, intertwining_sides, spectral_derivative
from .seminorms import (
    DecayReport,
    condition6_quantity,
    condition6_table,
    decay_check,
    decay_constants,
    function_decay_check,
    weighted_seminorm,
)
from .testfunctions import gaussian, gaussian_poly, hermite, sample

__all__ = [
    "FREQ", "MODES", "SPACE", "Axis", "DecayReport", "Grid", "GridFunction",
    "apply_operator", "cohen_apply", "cohen_inverse", "condition6_quantity", "condition6_table",
    "decay_check", "decay_constants", "fourier", "fourier_transform", "function_decay_check",
    "gaussian", "gaussian_poly", "hermite", "intertwining_residual", "intertwining_sides",
    "inverse_fourier", "partial_fourier", "relative_error", "sample", "spectral_derivative",
    "stft", "symmetric_change", "symmetric_change_inverse", "weighted_seminorm", "wig", "wig_inverse",
]
