"""Weighted seminorms and empirical decay constants on grids."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..weights import DirectSumWeight, eval_conjugate_sum
from .fourier import fourier_transform
from .grid import GridFunction
from .operators import spectral_derivative


def weighted_seminorm(f: GridFunction, W: DirectSumWeight, lam: float,
                      alpha: Sequence[int] | None = None, p=math.inf) -> float:
    """``|| exp(lam W) D^alpha f ||_p`` on the grid (rectangle-rule quadrature for p = 1, 2)."""
    if len(W) != f.dim:
        raise ValueError(f"weight has {len(W)} components, function has {f.dim} axes")
    alpha = tuple(alpha) if alpha is not None else (0,) * f.dim
    if len(alpha) != f.dim:
        raise ValueError("multi-index length must match the grid dimension")
    vals = np.abs(spectral_derivative(f, alpha)) * np.exp(lam * W.on_axes(f.grid.coords()))
    if p in (math.inf, "inf"):
        return float(np.max(vals))
    if p == 1:
        return float(np.sum(vals) * f.grid.cell_volume)
    if p == 2:
        return float(np.sqrt(np.sum(vals ** 2) * f.grid.cell_volume))
    raise ValueError("p must be 1, 2 or inf")


def condition6_quantity(f: GridFunction, Omega: DirectSumWeight, Sigma: DirectSumWeight,
                        lam: float, mu: float, alpha: Sequence[int], beta: Sequence[int]) -> float:
    """``|| exp(-lam Sigma*(alpha/lam) - mu Omega*(beta/mu)) x^beta D^alpha f ||_inf``."""
    scale = lam * eval_conjugate_sum(Sigma, [a / lam for a in alpha]) + \
        mu * eval_conjugate_sum(Omega, [b / mu for b in beta])
    if math.isinf(scale):
        return 0.0
    vals = spectral_derivative(f, tuple(alpha))
    for m, b in zip(f.grid.mesh(), beta):
        if b:
            vals = vals * m ** b
    # combine in log space; the raw factors overflow for large orders
    peak = float(np.max(np.abs(vals)))
    if peak == 0.0:
        return 0.0
    return math.exp(math.log(peak) - scale)


def condition6_table(f: GridFunction, Omega: DirectSumWeight, Sigma: DirectSumWeight,
                     lam: float, mu: float, max_order: int) -> np.ndarray:
    """Condition-(6) quantities for all ``alpha, beta`` with entries ``<= max_order``.

    Returned with shape ``(max_order + 1,) * 2N``: indices ``alpha + beta``.
    """
    d = f.dim
    table = np.zeros((max_order + 1,) * (2 * d))
    for idx in itertools.product(range(max_order + 1), repeat=2 * d):
        table[idx] = condition6_quantity(f, Omega, Sigma, lam, mu, idx[:d], idx[d:])
    return table


def decay_constants(F: GridFunction, Omega: DirectSumWeight, Sigma: DirectSumWeight,
                    lambdas: Sequence[float]) -> Dict[float, float]:
    """``C_lam = max |F(x, xi)| exp(lam (Omega(x) + Sigma(xi)))`` on a 2N grid."""
    N = F.dim // 2
    if F.dim != 2 * N or len(Omega) != N or len(Sigma) != N:
        raise ValueError("decay constants need F on R^{2N} with N-component Omega and Sigma")
    coords = F.grid.coords()
    weight = Omega.concat(Sigma).on_axes(coords)
    mag = np.abs(F.samples)
    out = {}
    with np.errstate(divide="ignore"):
        logmag = np.log(mag)
    for lam in lambdas:
        out[float(lam)] = float(np.exp(np.max(logmag + lam * weight)))
    return out


@dataclass
class DecayReport:
    lambdas: List[float]
    small: Dict[float, float]
    large: Dict[float, float]
    ratio_tol: float
    ratios: Dict[float, float] = field(default_factory=dict)
    stable: Dict[float, bool] = field(default_factory=dict)

    def __post_init__(self):
        for lam in self.lambdas:
            s, l = self.small[lam], self.large[lam]
            r = l / s if s > 0 else (math.inf if l > 0 else 1.0)
            self.ratios[lam] = r
            self.stable[lam] = bool(math.isfinite(l) and r <= 1 + self.ratio_tol)

    @property
    def passed(self) -> bool:
        return all(self.stable.values())

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [{"lambda": lam, "C_small": self.small[lam], "C_large": self.large[lam],
                      "ratio": self.ratios[lam], "stable": self.stable[lam]} for lam in self.lambdas],
        }


def decay_check(F: GridFunction, Omega: DirectSumWeight, Sigma: DirectSumWeight,
                lambdas: Sequence[float], reference: Optional[GridFunction] = None,
                inner_fraction: float = 10.0 / 14.0, ratio_tol: float = 1e-3) -> DecayReport:
    """Compare empirical ``C_lam`` between a smaller and a larger grid at equal spacing.

    ``reference`` is the same function sampled on the smaller grid; without it
    the smaller grid is the central sub-box scaled by ``inner_fraction``. Growth
    of ``C_lam`` beyond ``1 + ratio_tol`` flags the weight as not controlling F.
    """
    lambdas = [float(l) for l in lambdas]
    if reference is None:
        reference = inner_box(F, inner_fraction)
    small = decay_constants(reference, Omega, Sigma, lambdas)
    large = decay_constants(F, Omega, Sigma, lambdas)
    return DecayReport(lambdas, small, large, ratio_tol)


def function_decay_check(f: GridFunction, Omega: DirectSumWeight, Sigma: DirectSumWeight,
                         lambdas: Sequence[float], reference: Optional[GridFunction] = None,
                         inner_fraction: float = 10.0 / 14.0, ratio_tol: float = 1e-3):
    """Check ``exp(lam Omega) f`` and ``exp(lam Sigma) f_hat`` on a 2N grid.

    ``Omega`` and ``Sigma`` have one component per axis and are split into the
    two N-blocks of :func:`decay_check`. Returns ``(space_report, fourier_report)``.
    """
    d = f.dim
    if len(Omega) != d or len(Sigma) != d or d % 2:
        raise ValueError("weights must have one component per axis of an even-dimensional grid")
    N = d // 2
    om1, om2 = DirectSumWeight(Omega.components[:N]), DirectSumWeight(Omega.components[N:])
    sg1, sg2 = DirectSumWeight(Sigma.components[:N]), DirectSumWeight(Sigma.components[N:])
    space = decay_check(f, om1, om2, lambdas, reference, inner_fraction, ratio_tol)
    fhat = fourier_transform(f, list(range(d)))
    ref_hat = fourier_transform(reference, list(range(d))) if reference is not None else None
    freq = decay_check(fhat, sg1, sg2, lambdas, ref_hat, inner_fraction, ratio_tol)
    return space, freq


def inner_box(F: GridFunction, fraction: float) -> GridFunction:
    """Restriction to the central sub-box keeping ``fraction`` of each axis."""
    from .grid import Axis, Grid

    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    slices = []
    axes = []
    for a in F.axes:
        keep = int(round(a.n * fraction / 2)) * 2
        keep = max(2, min(a.n, keep))
        lo = (a.n - keep) // 2
        slices.append(slice(lo, lo + keep))
        axes.append(Axis(keep, a.step * keep / 2, a.tag))
    return GridFunction(Grid(tuple(axes)), np.asarray(F.samples)[tuple(slices)])
