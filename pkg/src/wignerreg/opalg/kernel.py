"""Cohen-class kernels and the associated conjugation maps.

The kernel is given through its Fourier transform
``kappa_hat(xi, eta) = exp(-i sum_j p_j(xi_j, eta_j))`` with real polynomials
``p_j``; optionally ``kappa_1_hat = q * kappa_hat`` for a nonvanishing ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .ncpoly import NCPolynomial, multiply
from .numbers import QQi
from .poly import Polynomial
from .substitution import SubstitutionMap, substitute

Vector = Tuple[NCPolynomial, ...]


@dataclass(frozen=True)
class KernelSpec:
    """``p[j]`` is a real polynomial in ``(xi_j, eta_j)``; ``q`` uses ``(xi_1..xi_N, eta_1..eta_N)``."""

    dim_n: int
    p: Tuple[Polynomial, ...]
    q: Optional[Polynomial] = None
    q_certificate: Optional[object] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(self.p))
        if len(self.p) != self.dim_n:
            raise ValueError(f"need {self.dim_n} kernel polynomials, got {len(self.p)}")
        for j, pj in enumerate(self.p):
            if pj.nvars != 2:
                raise ValueError(f"p{j + 1} must be a polynomial in (xi, eta)")
            if not pj.is_real():
                raise ValueError(f"p{j + 1} has complex coefficients; the kernel would not be unimodular")
        if self.q is not None and self.q.nvars != 2 * self.dim_n:
            raise ValueError(f"q must have {2 * self.dim_n} variables")

    @classmethod
    def zero(cls, dim_n: int) -> "KernelSpec":
        return cls(dim_n, tuple(Polynomial(2) for _ in range(dim_n)))

    def is_wigner(self) -> bool:
        return all(pj.is_zero() for pj in self.p) and (self.q is None or self.q == 1)

    def with_q(self, q: Optional[Polynomial], certificate=None) -> "KernelSpec":
        return KernelSpec(self.dim_n, self.p, q, certificate)

    def certify_q(self, box_radius: float = 10.0, max_depth: int = 14) -> "KernelSpec":
        """Attach a nonvanishing certificate for ``q`` (required to invert ``Q_1``)."""
        from ..regularity.nonvanishing import nonvanishing

        if self.q is None:
            return self
        return self.with_q(self.q, nonvanishing(self.q, box_radius, max_depth))

    def q_is_certified(self) -> bool:
        cert = self.q_certificate
        return cert is not None and getattr(cert, "status", None) == "NONVANISHING"

    # numerics -----------------------------------------------------------
    def phase(self, xi: Sequence[np.ndarray], eta: Sequence[np.ndarray]) -> np.ndarray:
        """``sum_j p_j(xi_j, eta_j)`` on broadcastable arrays."""
        total = 0.0
        for pj, a, b in zip(self.p, xi, eta):
            total = total + np.real(pj(a, b))
        return np.asarray(total)

    def kappa_hat(self, xi, eta) -> np.ndarray:
        return np.exp(-1j * self.phase(xi, eta))

    def kappa1_hat(self, xi, eta) -> np.ndarray:
        base = self.kappa_hat(xi, eta)
        if self.q is None:
            return base
        return self.q(*(list(xi) + list(eta))) * base


def kernel_operators(k: KernelSpec) -> Tuple[Vector, Vector, Vector, Vector]:
    """``(R, T, R*, T*)`` with ``R_j = d1 p_j(Dx_j, Dy_j)``, ``T_j = d2 p_j(Dx_j, Dy_j)``.

    The starred versions substitute the commuting pair ``(Dx_j + Dy_j, y_j - x_j)``.
    """
    n = k.dim_n
    one = NCPolynomial.identity(n)
    R, T, Rs, Ts = [], [], [], []
    for j, pj in enumerate(k.p):
        dx = NCPolynomial.generator("Dx", j, n)
        dy = NCPolynomial.generator("Dy", j, n)
        x = NCPolynomial.generator("x", j, n)
        y = NCPolynomial.generator("y", j, n)
        d1, d2 = pj.derivative(0), pj.derivative(1)
        R.append(d1.substitute_commuting([dx, dy], one))
        T.append(d2.substitute_commuting([dx, dy], one))
        pair = [dx + dy, y - x]
        Rs.append(d1.substitute_commuting(pair, one))
        Ts.append(d2.substitute_commuting(pair, one))
    return tuple(R), tuple(T), tuple(Rs), tuple(Ts)


def cohen_bar_map(k: KernelSpec) -> SubstitutionMap:
    n = k.dim_n
    _, _, Rs, Ts = kernel_operators(k)
    half = QQi(1) / 2
    X, Y, DX, DY = [], [], [], []
    for j in range(n):
        x = NCPolynomial.generator("x", j, n)
        y = NCPolynomial.generator("y", j, n)
        dx = NCPolynomial.generator("Dx", j, n)
        dy = NCPolynomial.generator("Dy", j, n)
        X.append((x + y).scale(half) + Rs[j])
        Y.append((dx - dy).scale(half) + Ts[j])
        DX.append(dx + dy)
        DY.append(y - x)
    return SubstitutionMap((tuple(X), tuple(Y), tuple(DX), tuple(DY)), None, "cohen-bar")


def cohen_tilde_map(k: KernelSpec) -> SubstitutionMap:
    n = k.dim_n
    R, T, _, _ = kernel_operators(k)
    half = QQi(1) / 2
    X, Y, DX, DY = [], [], [], []
    for j in range(n):
        x = NCPolynomial.generator("x", j, n)
        y = NCPolynomial.generator("y", j, n)
        dx = NCPolynomial.generator("Dx", j, n)
        dy = NCPolynomial.generator("Dy", j, n)
        X.append(x - dy.scale(half) - R[j])
        Y.append(x + dy.scale(half) - R[j])
        DX.append(dx.scale(half) + y - T[j])
        DY.append(dx.scale(half) - y + T[j])
    return SubstitutionMap((tuple(X), tuple(Y), tuple(DX), tuple(DY)), None, "cohen-tilde")


def cohen_bar(B: NCPolynomial, k: KernelSpec) -> NCPolynomial:
    """Operator ``Bbar`` with ``B Q[u] = Q[Bbar u]``."""
    _check_dim(B, k)
    return substitute(B, cohen_bar_map(k))


def cohen_tilde(B: NCPolynomial, k: KernelSpec) -> NCPolynomial:
    """Operator ``Btilde`` with ``Q[B u] = Btilde Q[u]``."""
    _check_dim(B, k)
    return substitute(B, cohen_tilde_map(k))


def cohen_tilde_inverse(P: NCPolynomial, k: KernelSpec) -> NCPolynomial:
    """Preimage under :func:`cohen_tilde`; the bar map is its two-sided inverse."""
    return cohen_bar(P, k)


def cohen_bar_inverse(P: NCPolynomial, k: KernelSpec) -> NCPolynomial:
    return cohen_tilde(P, k)


def operator_A(k: KernelSpec) -> NCPolynomial:
    """``A = q(Dx + Dy, y - x)``; the identity when ``q`` is absent."""
    n = k.dim_n
    one = NCPolynomial.identity(n)
    if k.q is None:
        return one
    dx = [NCPolynomial.generator("Dx", j, n) for j in range(n)]
    dy = [NCPolynomial.generator("Dy", j, n) for j in range(n)]
    x = [NCPolynomial.generator("x", j, n) for j in range(n)]
    y = [NCPolynomial.generator("y", j, n) for j in range(n)]
    values = [dx[j] + dy[j] for j in range(n)] + [y[j] - x[j] for j in range(n)]
    return k.q.substitute_commuting(values, one)


def q1_tilde(B: NCPolynomial, k: KernelSpec) -> NCPolynomial:
    """Operator with ``Q_1[B u] = q1_tilde(B) Q[u]``, i.e. ``(A B)~``."""
    if k.q is None:
        raise ValueError("kernel has no q; q1_tilde needs the kappa_1 kernel")
    _check_dim(B, k)
    return cohen_tilde(multiply(operator_A(k), B), k)


def fourier_operator(q: Polynomial, dim_n: int) -> NCPolynomial:
    """``q(Dx, Dy)`` for ``q`` in ``(xi_1..xi_N, eta_1..eta_N)``."""
    if q.nvars != 2 * dim_n:
        raise ValueError(f"q has {q.nvars} variables, expected {2 * dim_n}")
    return NCPolynomial.from_fourier_multiplier(q)


def left_divide_fourier(P: NCPolynomial, q: Polynomial) -> Optional[NCPolynomial]:
    """``Q`` with ``q(Dx, Dy) Q = P`` exactly, or ``None`` if no such operator exists.

    Commuting ``q(D)`` past ``x^a y^b`` only creates terms of lower degree in
    (x, y), so the top coefficient (a polynomial in D) must be divisible by
    ``q`` in the commutative sense. Peel off one (x, y) monomial at a time.
    """
    n = P.dim_n
    qop = fourier_operator(q, n)
    if q.is_zero():
        return None
    rem = P
    out: Dict[Tuple[int, ...], QQi] = {}
    while not rem.is_zero():
        mults = {key[:2 * n] for key in rem.terms}
        top = max(mults, key=lambda m: (sum(m), m))
        coeff = Polynomial(2 * n, {key[2 * n:]: c for key, c in rem.terms.items() if key[:2 * n] == top})
        quot = coeff.divide_exact(q)
        if quot is None:
            return None
        piece = NCPolynomial._raw(n, {top + e: c for e, c in quot.terms.items()})
        for key, c in piece.terms.items():
            out[key] = out[key] + c if key in out else c
        rem = rem - multiply(qop, piece)
    return NCPolynomial._raw(n, out)


def _check_dim(B: NCPolynomial, k: KernelSpec):
    if B.dim_n != k.dim_n:
        raise ValueError(f"dimension mismatch: operator N={B.dim_n}, kernel N={k.dim_n}")
