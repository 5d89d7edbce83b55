"""Sparse commutative polynomials with exact complex-rational coefficients.

These serve several roles: the test functions ``u(x, y)`` acted on by
``apply_symbolic``, the kernel polynomials ``p_j`` and ``q``, and the symbols
whose nonvanishing is certified by :mod:`wignerreg.regularity`.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np

from .numbers import QQi

Exps = Tuple[int, ...]


class Polynomial:
    """Polynomial in ``nvars`` commuting variables, stored as ``{exponents: coeff}``."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exps, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: Dict[Exps, QQi] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent in {e}")
            c = QQi.coerce(c)
            if c:
                clean[e] = clean[e] + c if e in clean else c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exps, QQi]) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = {e: c for e, c in terms.items() if c}
        p._hash = None
        return p

    # access -------------------------------------------------------------
    @property
    def terms(self) -> Dict[Exps, QQi]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def coefficient(self, e: Exps) -> QQi:
        return self._terms.get(tuple(e), QQi(0))

    def is_real(self) -> bool:
        return all(c.is_real() for c in self._terms.values())

    def used_variables(self) -> list[int]:
        return [i for i in range(self.nvars) if any(e[i] for e in self._terms)]

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def real_part(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: QQi(c.re) for e, c in self._terms.items()})

    def imag_part(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: QQi(c.im) for e, c in self._terms.items()})

    def conjugate(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c.conjugate() for e, c in self._terms.items()})

    def coefficient_norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.sqrt(sum(abs(c) ** 2 for c in self._terms.values())))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = QQi.coerce(other)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        out: Dict[Exps, QQi] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        c = QQi.coerce(other)
        return Polynomial._raw(self.nvars, {e: v / c for e, v in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == Polynomial.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def derivative(self, i: int) -> "Polynomial":
        """Partial derivative with respect to variable ``i`` (plain ``d/dz_i``)."""
        out: Dict[Exps, QQi] = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return Polynomial._raw(self.nvars, out)

    def divide_exact(self, other: "Polynomial") -> "Polynomial | None":
        """Quotient ``self / other`` if ``other`` divides exactly, else ``None``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = max(other._terms.items())
        rem = self
        quot: Dict[Exps, QQi] = {}
        while not rem.is_zero():
            e, c = max(rem._terms.items())
            if any(a < b for a, b in zip(e, lead_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = c / lead_c
            quot[qe] = qc
            rem = rem - other * Polynomial._raw(self.nvars, {qe: qc})
        return Polynomial._raw(self.nvars, quot)

    # evaluation ---------------------------------------------------------
    def __call__(self, *point):
        if len(point) == 1 and np.ndim(point[0]) > 0 and len(point[0]) == self.nvars and self.nvars != 1:
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = 0
        for e, c in self._terms.items():
            term = complex(c)
            for x, k in zip(point, e):
                if k:
                    term = term * np.asarray(x) ** k
            total = total + term
        return total

    def substitute_commuting(self, values: Sequence, one):
        """Evaluate at pairwise commuting ring elements ``values``.

        ``one`` is the unit of the target ring. Powers are cached per variable.
        """
        if len(values) != self.nvars:
            raise ValueError("wrong number of substituted values")
        cache: Dict[Tuple[int, int], object] = {}

        def power(i: int, k: int):
            key = (i, k)
            if key not in cache:
                cache[key] = one if k == 0 else power(i, k - 1) * values[i]
            return cache[key]

        total = one * 0
        for e, c in self.items():
            term = one * c
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def to_float_arrays(self):
        """(exponents int array, complex coefficient array) for vectorized evaluation."""
        items = self.items()
        if not items:
            return np.zeros((0, self.nvars), dtype=int), np.zeros(0, dtype=complex)
        exps = np.array([e for e, _ in items], dtype=int).reshape(len(items), self.nvars)
        coeffs = np.array([complex(c) for _, c in items])
        return exps, coeffs

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of ``points`` (shape ``(m, nvars)``)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        exps, coeffs = self.to_float_arrays()
        if len(coeffs) == 0:
            return np.zeros(points.shape[0], dtype=complex)
        mons = np.prod(points[:, None, :] ** exps[None, :, :], axis=2)
        return mons @ coeffs

    def restrict(self, keep: Iterable[int]) -> "Polynomial":
        """Drop variables not in ``keep`` (they must not appear)."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        for e in self._terms:
            if any(e[i] for i in drop):
                raise ValueError("cannot drop a variable that appears in the polynomial")
        return Polynomial._raw(len(keep), {tuple(e[i] for i in keep): c for e, c in self._terms.items()})

    def __repr__(self):
        return f"Polynomial({self.nvars}, {{{', '.join(f'{e}: {c.text()}' for e, c in self.items())}}})"

    def text(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else [f"z{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mon = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            parts.append(f"{c.text()}*{mon}" if mon else c.text())
        return " + ".join(parts)
