"""Operators built from a symbol ``p(z, zeta)`` on R^{2N} by explicit substitution.

``p`` has variables ``(z_1..z_N, zeta_1..zeta_N)``. Each constructor
substitutes commuting operator vectors for ``z`` and ``zeta`` in that factor
order, independently of the bar/tilde machinery, so the results serve as
oracles for the transfer rules.
"""

from __future__ import annotations

from typing import List, Tuple

from ..opalg.kernel import KernelSpec, kernel_operators
from ..opalg.ncpoly import NCPolynomial
from ..opalg.numbers import QQi
from ..opalg.poly import Polynomial


def _gens(n: int):
    g = {kind: [NCPolynomial.generator(kind, j, n) for j in range(n)] for kind in ("x", "y", "Dx", "Dy")}
    return g["x"], g["y"], g["Dx"], g["Dy"]


def _subst(p: Polynomial, z: List[NCPolynomial], zeta: List[NCPolynomial], n: int) -> NCPolynomial:
    if p.nvars != 2 * n:
        raise ValueError(f"symbol must have {2 * n} variables")
    return p.substitute_commuting(list(z) + list(zeta), NCPolynomial.identity(n))


def example_operators(p: Polynomial, dim_n: int) -> Tuple[NCPolynomial, NCPolynomial, NCPolynomial, NCPolynomial]:
    """``(P1, P2, P3, P4)``: regular whenever ``p`` has no real zero."""
    n = dim_n
    x, y, dx, dy = _gens(n)
    h = QQi(1) / 2
    P1 = _subst(p, [(x[j] + y[j]).scale(h) for j in range(n)], [(dx[j] - dy[j]).scale(h) for j in range(n)], n)
    P2 = _subst(p, [dx[j] + dy[j] for j in range(n)], [y[j] - x[j] for j in range(n)], n)
    P3 = _subst(p, [x[j] - dy[j].scale(h) for j in range(n)], [x[j] + dy[j].scale(h) for j in range(n)], n)
    P4 = _subst(p, [y[j] + dx[j].scale(h) for j in range(n)], [dx[j].scale(h) - y[j] for j in range(n)], n)
    return P1, P2, P3, P4


def cohen_example_operators(p: Polynomial, k: KernelSpec) -> Tuple[NCPolynomial, NCPolynomial, NCPolynomial]:
    """The three kernel-dependent families built from ``R_j``, ``T_j`` and their starred forms."""
    n = k.dim_n
    x, y, dx, dy = _gens(n)
    R, T, Rs, Ts = kernel_operators(k)
    h = QQi(1) / 2
    P1 = _subst(p, [(x[j] + y[j]).scale(h) + Rs[j] for j in range(n)],
                [(dx[j] - dy[j]).scale(h) + Ts[j] for j in range(n)], n)
    P2 = _subst(p, [x[j] - dy[j].scale(h) - R[j] for j in range(n)],
                [x[j] + dy[j].scale(h) - R[j] for j in range(n)], n)
    P3 = _subst(p, [dx[j].scale(h) + y[j] - T[j] for j in range(n)],
                [dx[j].scale(h) - y[j] + T[j] for j in range(n)], n)
    return P1, P2, P3
