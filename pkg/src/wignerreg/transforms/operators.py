"""Numerical application of normal-ordered operators and intertwining checks."""

from __future__ import annotations

from typing import Dict, Optional, Tuple

import numpy as np

from ..opalg.kernel import KernelSpec, cohen_bar, cohen_tilde, q1_tilde
from ..opalg.ncpoly import NCPolynomial
from ..opalg.substitution import wig_bar, wig_tilde
from .fourier import cohen_apply, wig
from .grid import GridFunction, relative_error

MODES = ("wig_tilde", "wig_bar", "cohen_tilde", "cohen_bar", "q1")


def spectral_derivative(u: GridFunction, orders: Tuple[int, ...]) -> np.ndarray:
    """``D^orders u`` with ``D = -i d``, via FFT along each differentiated axis."""
    data = np.asarray(u.samples)
    for ax, k in enumerate(orders):
        if k:
            a = u.axes[ax]
            freq = 2 * np.pi * np.fft.fftfreq(a.n, a.step)
            shape = [1] * data.ndim
            shape[ax] = a.n
            data = np.fft.ifft(np.fft.fft(data, axis=ax) * (freq ** k).reshape(shape), axis=ax)
    return data


def apply_operator(P: NCPolynomial, u: GridFunction) -> GridFunction:
    """Apply ``sum c x^a y^b Dx^g Dy^m`` to samples; derivatives act first."""
    d = 2 * P.dim_n
    if u.dim != d:
        raise ValueError(f"operator acts on R^{d}, grid function lives on R^{u.dim}")
    mesh = u.grid.mesh()
    by_der: Dict[Tuple[int, ...], list] = {}
    for key, c in P.items():
        by_der.setdefault(key[d:], []).append((key[:d], complex(c)))
    out = np.zeros(u.grid.shape, dtype=complex)
    for der, terms in by_der.items():
        du = spectral_derivative(u, der)
        coeff = np.zeros(u.grid.shape, dtype=complex)
        for mult, c in terms:
            mono = c
            for m, e in zip(mesh, mult):
                if e:
                    mono = mono * m ** e
            coeff = coeff + mono
        out = out + coeff * du
    return u.with_samples(out)


def intertwining_sides(P: NCPolynomial, u: GridFunction, mode: str,
                       k: Optional[KernelSpec] = None) -> Tuple[GridFunction, GridFunction]:
    """Both sides of the identity selected by ``mode``, computed from the same ``u``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")
    if mode.startswith("cohen") or mode == "q1":
        if k is None:
            raise ValueError(f"mode {mode} needs a kernel")
    if mode == "wig_tilde":
        return wig(apply_operator(P, u)), apply_operator(wig_tilde(P), wig(u))
    if mode == "wig_bar":
        return apply_operator(P, wig(u)), wig(apply_operator(wig_bar(P), u))
    if mode == "cohen_tilde":
        return cohen_apply(k, apply_operator(P, u)), apply_operator(cohen_tilde(P, k), cohen_apply(k, u))
    if mode == "cohen_bar":
        return apply_operator(P, cohen_apply(k, u)), cohen_apply(k, apply_operator(cohen_bar(P, k), u))
    # q1: Q_1[P u] = (A P)~ Q[u]
    if k.q is None:
        raise ValueError("mode q1 needs a kernel with q")
    return cohen_apply(k, apply_operator(P, u), use_q=True), apply_operator(q1_tilde(P, k), cohen_apply(k, u))


def intertwining_residual(P: NCPolynomial, u: GridFunction, mode: str,
                          k: Optional[KernelSpec] = None, eps: float = 1e-300) -> float:
    """``max|LHS - RHS| / max(max|LHS|, eps)``."""
    lhs, rhs = intertwining_sides(P, u, mode, k)
    return relative_error(lhs, rhs, eps)
