"""Analytic test functions sampled on grids, plus an exact Gaussian oracle."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numpy.polynomial import hermite as H

from ..opalg.ncpoly import NCPolynomial
from ..opalg.numbers import QQi
from ..opalg.poly import Polynomial
from .grid import Grid, GridFunction


def gaussian(grid: Grid, a: float = 1.0, center: Sequence[float] | None = None) -> GridFunction:
    """``exp(-a |x - c|^2 / 2)``."""
    if a <= 0:
        raise ValueError("gaussian width parameter a must be positive")
    mesh = grid.mesh()
    c = list(center) if center is not None else [0.0] * grid.dim
    r2 = sum((m - ci) ** 2 for m, ci in zip(mesh, c))
    return GridFunction(grid, np.exp(-a * r2 / 2) * np.ones(grid.shape))


def hermite_function(k: int, x: np.ndarray) -> np.ndarray:
    """Normalized Hermite function ``H_k(x) exp(-x^2/2) / sqrt(2^k k! sqrt(pi))``."""
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    norm = math.sqrt(2.0 ** k * math.factorial(k) * math.sqrt(math.pi))
    return H.hermval(x, coef) * np.exp(-x ** 2 / 2) / norm


def hermite(grid: Grid, orders: Sequence[int]) -> GridFunction:
    """Tensor product of Hermite functions of the given orders."""
    if len(orders) != grid.dim:
        raise ValueError("one Hermite order per axis is required")
    out = np.ones(grid.shape)
    for m, k in zip(grid.mesh(), orders):
        out = out * hermite_function(int(k), m)
    return GridFunction(grid, out)


def gaussian_poly(grid: Grid, p: Polynomial, a: float = 1.0) -> GridFunction:
    """``p(x) exp(-a |x|^2 / 2)``."""
    if p.nvars != grid.dim:
        raise ValueError("polynomial and grid dimensions differ")
    mesh = grid.mesh()
    vals = np.asarray(p(*mesh)) * np.ones(grid.shape)
    r2 = sum(m ** 2 for m in mesh)
    return GridFunction(grid, vals * np.exp(-a * r2 / 2))


SAMPLERS = {"gaussian": gaussian, "hermite": hermite, "gaussian_poly": gaussian_poly}


def sample(name: str, grid: Grid, **params) -> GridFunction:
    try:
        fn = SAMPLERS[name]
    except KeyError:
        raise ValueError(f"unknown test function {name!r}; choose from {sorted(SAMPLERS)}") from None
    return fn(grid, **params)


def apply_to_gaussian_poly(P: NCPolynomial, p: Polynomial, a=1) -> Polynomial:
    """Exact prefactor ``r`` with ``P (p G) = r G`` for ``G = exp(-a |z|^2 / 2)``.

    Uses ``D_j (q G) = (D_j q + i a z_j q) G`` with ``D = -i d``.
    """
    n = P.dim_n
    nv = 2 * n
    if p.nvars != nv:
        raise ValueError(f"prefactor must have {nv} variables")
    a = QQi.coerce(a)
    ia = QQi(0, 1) * a
    minus_i = QQi(0, -1)
    zs = [Polynomial.variable(nv, j) for j in range(nv)]

    def d(q: Polynomial, j: int) -> Polynomial:
        return q.derivative(j) * minus_i + zs[j] * q * ia

    out = Polynomial(nv)
    cache = {(0,) * nv: p}

    def derived(gam):
        if gam not in cache:
            j = max(i for i, g in enumerate(gam) if g)
            prev = list(gam)
            prev[j] -= 1
            cache[gam] = d(derived(tuple(prev)), j)
        return cache[gam]

    for key, c in P.items():
        mult, der = key[:nv], key[nv:]
        mono = Polynomial(nv, {mult: c})
        out = out + mono * derived(tuple(der))
    return out
