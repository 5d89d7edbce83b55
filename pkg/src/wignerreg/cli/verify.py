"""Named verification suites run by ``wignerreg verify``.

Each suite returns rows ``(name, value, tol, passed)``; a suite passes when
every row does. Tolerances default to per-row values and a ``tol`` argument
overrides all of them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from ..opalg.kernel import KernelSpec, cohen_tilde
from ..opalg.ncpoly import NCPolynomial, random_operator, twisted_laplacian
from ..opalg.substitution import wig_bar, wig_tilde, wig_tilde_inverse
from ..transforms.fourier import cohen_apply, stft, wig
from ..transforms.grid import Grid, relative_error
from ..transforms.operators import intertwining_residual
from ..transforms.seminorms import function_decay_check
from ..transforms.testfunctions import gaussian, hermite
from ..weights import (
    WeightFunction,
    WeightQuadruple,
    derive_weights,
    parse_direct_sum,
    prop1_violation,
    prop2_ratio,
    prop4_constant,
    young_conjugate,
    young_conjugate_closed,
)
from .parser import parse_kernel, parse_ncpoly


@dataclass(frozen=True)
class Row:
    name: str
    value: float
    tol: float
    passed: bool

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}: {self.value:.3e} (tol {self.tol:.1e})"


def _row(name: str, value: float, tol: float, override: Optional[float]) -> Row:
    t = override if override is not None else tol
    return Row(name, float(value), t, bool(value <= t))


def _exact(name: str, ok: bool) -> Row:
    return Row(name, 0.0 if ok else 1.0, 0.0, ok)


# generator tables ---------------------------------------------------------------

BAR_TABLE = {"x": "(x{j}+y{j})/2", "y": "(Dx{j}-Dy{j})/2", "Dx": "Dx{j}+Dy{j}", "Dy": "y{j}-x{j}"}
TILDE_TABLE = {"x": "x{j}-Dy{j}/2", "y": "x{j}+Dy{j}/2", "Dx": "y{j}+Dx{j}/2", "Dy": "Dx{j}/2-y{j}"}


def suite_generators(n=None, L=None, tol=None) -> List[Row]:
    rows = []
    for N in (1, 2, 3):
        for kind in ("x", "y", "Dx", "Dy"):
            for j in range(1, N + 1):
                g = parse_ncpoly(f"{kind}{j}", N)
                bar = parse_ncpoly(BAR_TABLE[kind].format(j=j), N)
                tilde = parse_ncpoly(TILDE_TABLE[kind].format(j=j), N)
                rows.append(_exact(f"N={N} bar {kind}{j}", wig_bar(g) == bar))
                rows.append(_exact(f"N={N} tilde {kind}{j}", wig_tilde(g) == tilde))
                rows.append(_exact(f"N={N} tilde inverse {kind}{j}", wig_tilde_inverse(tilde) == g))
    return rows


# intertwining -------------------------------------------------------------------

def suite_intertwining(n=None, L=None, tol=None) -> List[Row]:
    n = n or 256
    L = L or 12.0
    grid = Grid.uniform(2, n, L)
    inputs = {"gaussian": gaussian(grid), "hermite(1,2)": hermite(grid, (1, 2))}
    rows = []
    for label, u in inputs.items():
        for kind in ("x", "y", "Dx", "Dy"):
            P = NCPolynomial.generator(kind, 0, 1)
            rows.append(_row(f"wig_tilde {kind} on {label}", intertwining_residual(P, u, "wig_tilde"), 1e-9, tol))
            rows.append(_row(f"wig_bar {kind} on {label}", intertwining_residual(P, u, "wig_bar"), 1e-9, tol))
        rows.append(_row(f"wig_tilde twisted Laplacian on {label}",
                         intertwining_residual(twisted_laplacian(), u, "wig_tilde"), 1e-6, tol))
    rng = random.Random(7)
    u = inputs["gaussian"]
    for i in range(3):
        P = random_operator(1, 4, 4, rng)
        rows.append(_row(f"wig_tilde random degree-4 operator #{i}", intertwining_residual(P, u, "wig_tilde"), 1e-6, tol))
    return rows


# weights ------------------------------------------------------------------------

def suite_weights(n=None, L=None, tol=None) -> List[Row]:
    rows = []
    w = WeightFunction("gevrey", 2.0)
    ss = np.linspace(0.5, 50.0, n or 100)
    rel = max(abs(young_conjugate(w, s) - young_conjugate_closed(w, s)) / max(1.0, abs(young_conjugate_closed(w, s)))
              for s in ss)
    rows.append(_row("gevrey(2) conjugate vs closed form (relative)", rel, 1e-6, tol))
    xs = np.linspace(0.0, 100.0, 2001)[1:]
    for spec in ("gevrey:2", "gevrey:3", "logpow:2:norm"):
        ww = parse_direct_sum(spec).components[0]
        for lam in (0.5, 1.0, 2.0):
            rows.append(_row(f"{spec} bound x^j exp(-lam omega) lam={lam}",
                             max(prop1_violation(ww, lam, range(21), xs), 0.0), 1e-7, tol))
        lam2 = 1.0 / ww.b + 1.0
        rows.append(_row(f"{spec} infimum bound ratio - 1, lam={lam2:g}",
                         max(prop2_ratio(ww, lam2, xs[xs >= 1]) - 1.0, 0.0), 1e-7, tol))
        c4 = prop4_constant(ww, 1.0)
        rows.append(Row(f"{spec} factorial constant finite", c4, math.inf, bool(math.isfinite(c4))))
    return rows


# decay --------------------------------------------------------------------------

def suite_decay(n=None, L=None, tol=None) -> List[Row]:
    L = L or 10.0
    h = 2 * L / (n or 200)
    big = L + 4.0

    def grid(dim, half):
        m = int(round(2 * half / h))
        return Grid.uniform(dim, m + (m % 2), half)

    lambdas = (0.5, 1.0, 2.0)
    rtol = tol if tol is not None else 0.05
    rows = []
    Om = parse_direct_sum("gevrey:2")
    Sg = parse_direct_sum("gevrey:3")
    v_small, v_big = (stft(gaussian(grid(1, a)), gaussian(grid(1, a))) for a in (L, big))
    space, freq = function_decay_check(v_big, Om.concat(Sg), Sg.concat(Om), lambdas, v_small, ratio_tol=rtol)
    for lam in lambdas:
        rows.append(Row(f"STFT space C ratio lam={lam}", space.ratios[lam], 1 + rtol, space.stable[lam]))
        rows.append(Row(f"STFT Fourier C ratio lam={lam}", freq.ratios[lam], 1 + rtol, freq.stable[lam]))
    q = WeightQuadruple(parse_direct_sum("gevrey:2,gevrey:3"), parse_direct_sum("gevrey:2.5,gevrey:2"))
    d = derive_weights(q)
    w_small, w_big = (wig(gaussian(grid(2, a))) for a in (L, big))
    space, freq = function_decay_check(w_big, d.Omega, d.Sigma, lambdas, w_small, ratio_tol=rtol)
    for lam in lambdas:
        rows.append(Row(f"Wig space C ratio lam={lam}", space.ratios[lam], 1 + rtol, space.stable[lam]))
        rows.append(Row(f"Wig Fourier C ratio lam={lam}", freq.ratios[lam], 1 + rtol, freq.stable[lam]))
    return rows


# cohen --------------------------------------------------------------------------

def suite_cohen(n=None, L=None, tol=None) -> List[Row]:
    rows = []
    rng = random.Random(11)
    k0 = KernelSpec.zero(1)
    same = all(cohen_tilde(B, k0) == wig_tilde(B) for B in (random_operator(1, 3, 4, rng) for _ in range(10)))
    rows.append(_exact("zero kernel: cohen_tilde == wig_tilde on 10 random B", same))
    g = Grid.uniform(2, 256, 12.0)
    u = gaussian(g)
    rows.append(_row("zero kernel: cohen_apply == wig", relative_error(cohen_apply(k0, u), wig(u)), 1e-12, tol))
    n = n or 1024
    L = L or 24.0
    k = parse_kernel("p1=xi^2+eta^2", 1)
    u = gaussian(Grid.uniform(2, n, L))
    for kind in ("x", "y", "Dx", "Dy"):
        P = NCPolynomial.generator(kind, 0, 1)
        rows.append(_row(f"cohen_tilde {kind} (p1=xi^2+eta^2)", intertwining_residual(P, u, "cohen_tilde", k), 1e-6, tol))
    rows.append(_row("cohen_tilde twisted Laplacian (p1=xi^2+eta^2)",
                     intertwining_residual(twisted_laplacian(), u, "cohen_tilde", k), 1e-6, tol))
    return rows


SUITES: Dict[str, Callable[..., List[Row]]] = {
    "generators": suite_generators,
    "intertwining": suite_intertwining,
    "weights": suite_weights,
    "decay": suite_decay,
    "cohen": suite_cohen,
}


def run_suite(name: str, n=None, L=None, tol=None) -> List[Row]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(n=n, L=L, tol=tol)
