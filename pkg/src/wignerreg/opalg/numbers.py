"""Exact complex rationals (Gaussian rationals) used as operator coefficients.

A value is stored as ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0`` in
lowest terms. A shared denominator keeps products to four integer
multiplications and one gcd, which matters for the normal-ordering loops.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, float):
        # repr round-trips, so 0.5 -> 1/2 and 0.1 -> 1/10
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot convert {type(v).__name__} to an exact rational")


def _make(a: int, b: int, d: int) -> "QQi":
    g = gcd(gcd(a, b), d)
    if g != 1:
        a //= g
        b //= g
        d //= g
    out = object.__new__(QQi)
    out._a = a
    out._b = b
    out._d = d
    return out


class QQi:
    """A complex number ``re + i*im`` with exact rational parts."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        r = _frac(re)
        s = _frac(im)
        d = r.denominator * s.denominator // gcd(r.denominator, s.denominator)
        a = r.numerator * (d // r.denominator)
        b = s.numerator * (d // s.denominator)
        g = gcd(gcd(a, b), d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def coerce(cls, v) -> "QQi":
        if isinstance(v, QQi):
            return v
        if isinstance(v, int):
            return _make(v, 0, 1)
        if isinstance(v, complex):
            return cls(v.real, v.imag)
        return cls(v, 0)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = other if isinstance(other, QQi) else QQi.coerce(other)
        if self._d == o._d:
            return _make(self._a + o._a, self._b + o._b, self._d)
        return _make(self._a * o._d + o._a * self._d, self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, QQi) else QQi.coerce(other)
        if self._d == o._d:
            return _make(self._a - o._a, self._b - o._b, self._d)
        return _make(self._a * o._d - o._a * self._d, self._b * o._d - o._b * self._d, self._d * o._d)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return _make(self._a * other, self._b * other, self._d)
        o = other if isinstance(other, QQi) else QQi.coerce(other)
        return _make(self._a * o._a - self._b * o._b, self._a * o._b + self._b * o._a, self._d * o._d)

    __rmul__ = __mul__

    def __neg__(self):
        return _make(-self._a, -self._b, self._d)

    def __truediv__(self, other):
        o = QQi.coerce(other)
        den = o._a * o._a + o._b * o._b
        if den == 0:
            raise ZeroDivisionError("division by zero coefficient")
        # (a+bi)/d / ((c+ei)/f) = f (a+bi)(c-ei) / (d (c^2+e^2))
        a = (self._a * o._a + self._b * o._b) * o._d
        b = (self._b * o._a - self._a * o._b) * o._d
        d = self._d * den
        return _make(a, b, d)

    def __rtruediv__(self, other):
        return QQi.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return QQi(1) / (self ** (-k))
        out = _make(1, 0, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def times_minus_i_pow(self, k: int) -> "QQi":
        """``self * (-i)^k`` without a general multiplication."""
        k %= 4
        a, b, d = self._a, self._b, self._d
        if k == 0:
            return self
        if k == 1:
            return _make(b, -a, d)
        if k == 2:
            return _make(-a, -b, d)
        return _make(-b, a, d)

    def conjugate(self) -> "QQi":
        return _make(self._a, -self._b, self._d)

    # comparisons ----------------------------------------------------------
    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, other):
        if isinstance(other, QQi):
            return self._a == other._a and self._b == other._b and self._d == other._d
        try:
            o = QQi.coerce(other)
        except TypeError:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def is_real(self) -> bool:
        return self._b == 0

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"

    def text(self) -> str:
        """Canonical ``(re,im)`` form used by the operator text format."""
        return f"({self.re},{self.im})"


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)
