"""Normal-ordered differential operators with polynomial coefficients.

An operator on R^{2N} with coordinates (x, y) is stored as a finite sum of
ordered monomials ``c * x^a y^b Dx^g Dy^m`` where ``D = -i d/dv``. A term key
is the flat tuple ``a + b + g + m`` of length 4N.

Products are normal-ordered with the closed-form Leibniz rule

    D^c x^a = sum_k C(c, k) a!/(a-k)! (-i)^k x^(a-k) D^(c-k)

applied independently to every (x_j, Dx_j) and (y_j, Dy_j) pair.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from math import comb, perm
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .numbers import QQi
from .poly import Polynomial

Key = Tuple[int, ...]

KINDS = ("x", "y", "Dx", "Dy")


@lru_cache(maxsize=4096)
def _leibniz(c: int, a: int) -> Tuple[Tuple[int, int], ...]:
    """Integer weights of ``D^c x^a``: tuples ``(k, C(c,k) * a!/(a-k)!)``."""
    return tuple((k, comb(c, k) * perm(a, k)) for k in range(min(c, a) + 1))


class NCPolynomial:
    """Operator ``sum c x^a y^b Dx^g Dy^m`` in normal form on R^{2N}."""

    __slots__ = ("dim_n", "_terms", "_hash")

    def __init__(self, dim_n: int, terms: Mapping[Key, object] | None = None):
        if dim_n < 1:
            raise ValueError("dim_n must be a positive integer")
        self.dim_n = dim_n
        clean: Dict[Key, QQi] = {}
        for key, c in (terms or {}).items():
            key = tuple(int(k) for k in key)
            if len(key) != 4 * dim_n:
                raise ValueError(f"term key {key} does not have length {4 * dim_n}")
            if any(k < 0 for k in key):
                raise ValueError(f"negative exponent in {key}")
            c = QQi.coerce(c)
            if key in clean:
                c = clean[key] + c
            clean[key] = c
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, dim_n: int, terms: Dict[Key, QQi]) -> "NCPolynomial":
        p = cls.__new__(cls)
        p.dim_n = dim_n
        p._terms = {k: v for k, v in terms.items() if v}
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, dim_n: int) -> "NCPolynomial":
        return cls._raw(dim_n, {})

    @classmethod
    def identity(cls, dim_n: int, c=1) -> "NCPolynomial":
        return cls(dim_n, {(0,) * (4 * dim_n): c})

    @classmethod
    def generator(cls, kind: str, j: int, dim_n: int) -> "NCPolynomial":
        """The generator ``kind_j`` (``kind`` in x, y, Dx, Dy; ``j`` zero-based)."""
        if kind not in KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        if not 0 <= j < dim_n:
            raise ValueError(f"coordinate index {j} out of range for N={dim_n}")
        key = [0] * (4 * dim_n)
        key[KINDS.index(kind) * dim_n + j] = 1
        return cls._raw(dim_n, {tuple(key): QQi(1)})

    @classmethod
    def monomial(cls, alpha, beta, gamma, mu, c=1) -> "NCPolynomial":
        n = len(alpha)
        if not (len(beta) == len(gamma) == len(mu) == n):
            raise ValueError("multi-indices must share the same length")
        return cls(n, {tuple(alpha) + tuple(beta) + tuple(gamma) + tuple(mu): c})

    @classmethod
    def from_multiplication(cls, p: Polynomial) -> "NCPolynomial":
        """Multiplication operator by ``p(x, y)`` (``p`` in 2N variables)."""
        n = p.nvars // 2
        if p.nvars != 2 * n or n < 1:
            raise ValueError("symbol must have 2N variables")
        pad = (0,) * (2 * n)
        return cls._raw(n, {e + pad: c for e, c in p.terms.items()})

    @classmethod
    def from_fourier_multiplier(cls, p: Polynomial) -> "NCPolynomial":
        """Constant-coefficient operator ``p(Dx, Dy)``."""
        n = p.nvars // 2
        if p.nvars != 2 * n or n < 1:
            raise ValueError("symbol must have 2N variables")
        pad = (0,) * (2 * n)
        return cls._raw(n, {pad + e: c for e, c in p.terms.items()})

    # access -------------------------------------------------------------
    @property
    def terms(self) -> Dict[Key, QQi]:
        return dict(self._terms)

    def split(self, key: Key) -> Tuple[Key, Key, Key, Key]:
        n = self.dim_n
        return key[:n], key[n:2 * n], key[2 * n:3 * n], key[3 * n:]

    def items(self):
        """Terms in canonical (lexicographic on (a, b, g, m)) order."""
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
        return max(sum(k) for k in self._terms)

    def coefficient(self, key: Key) -> QQi:
        return self._terms.get(tuple(key), QQi(0))

    def multiplication_symbol(self) -> Polynomial:
        """Symbol in (x, y) of a pure multiplication operator."""
        n = self.dim_n
        if any(any(k[2 * n:]) for k in self._terms):
            raise ValueError("operator contains derivatives")
        return Polynomial(2 * n, {k[:2 * n]: c for k, c in self._terms.items()})

    def fourier_symbol(self) -> Polynomial:
        """Symbol in (xi, eta) of a constant-coefficient operator."""
        n = self.dim_n
        if any(any(k[:2 * n]) for k in self._terms):
            raise ValueError("operator has nonconstant coefficients")
        return Polynomial(2 * n, {k[2 * n:]: c for k, c in self._terms.items()})

    # arithmetic ---------------------------------------------------------
    def _lift(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            if other.dim_n != self.dim_n:
                raise ValueError(f"dimension mismatch: N={self.dim_n} vs N={other.dim_n}")
            return other
        return NCPolynomial.identity(self.dim_n, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self._terms)
        for k, c in o._terms.items():
            out[k] = out[k] + c if k in out else c
        return NCPolynomial._raw(self.dim_n, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw(self.dim_n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "NCPolynomial":
        c = QQi.coerce(c)
        return NCPolynomial._raw(self.dim_n, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(QQi(1) / QQi.coerce(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("operator powers must be nonnegative integers")
        out = NCPolynomial.identity(self.dim_n)
        base = self
        while k:
            if k & 1:
                out = multiply(out, base)
            base = multiply(base, base)
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, NCPolynomial):
            return self.dim_n == other.dim_n and self._terms == other._terms
        if isinstance(other, (int, float, complex, QQi)):
            return self == NCPolynomial.identity(self.dim_n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim_n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"NCPolynomial(N={self.dim_n}, {self.text()!r})"

    def text(self) -> str:
        """Canonical serialization, e.g. ``(1,0) x^[1] y^[0] Dx^[0] Dy^[2]``."""
        if not self._terms:
            return "(0,0) " + " ".join(f"{k}^[{','.join('0' * self.dim_n)}]" for k in KINDS)
        parts = []
        for key, c in self.items():
            blocks = self.split(key)
            mons = " ".join(f"{name}^[{','.join(str(v) for v in b)}]" for name, b in zip(KINDS, blocks))
            parts.append(f"{c.text()} {mons}")
        return " + ".join(parts)

    __str__ = text


def multiply(P: NCPolynomial, Q: NCPolynomial) -> NCPolynomial:
    """Normal-ordered composition ``P o Q``."""
    if P.dim_n != Q.dim_n:
        raise ValueError(f"dimension mismatch: N={P.dim_n} vs N={Q.dim_n}")
    n = P.dim_n
    n2 = 2 * n
    out: Dict[Key, QQi] = {}
    for k1, c1 in P._terms.items():
        der1 = k1[n2:]
        for k2, c2 in Q._terms.items():
            mult2 = k2[:n2]
            # per pair: move D^c of P past the multiplication part of Q
            choices = [_leibniz(der1[i], mult2[i]) for i in range(n2)]
            base = c1 * c2
            for combo in itertools.product(*choices):
                weight = 1
                total = 0
                for k, w in combo:
                    weight *= w
                    total += k
                key = tuple(
                    [k1[i] + mult2[i] - combo[i][0] for i in range(n2)]
                    + [der1[i] - combo[i][0] + k2[n2 + i] for i in range(n2)]
                )
                v = (base * weight).times_minus_i_pow(total)
                out[key] = out[key] + v if key in out else v
    return NCPolynomial._raw(n, out)


def commutator(P: NCPolynomial, Q: NCPolynomial) -> NCPolynomial:
    """``[P, Q] = PQ - QP``."""
    return multiply(P, Q) - multiply(Q, P)


def apply_symbolic(P: NCPolynomial, u: Polynomial) -> Polynomial:
    """Apply ``P`` to the polynomial ``u(x, y)`` exactly, with ``D = -i d``."""
    n = P.dim_n
    if u.nvars != 2 * n:
        raise ValueError(f"u must have {2 * n} variables, got {u.nvars}")
    out = Polynomial(2 * n)
    for key, c in P._terms.items():
        mult, der = key[:2 * n], key[2 * n:]
        acc: Dict[Tuple[int, ...], QQi] = {}
        order = sum(der)
        for e, v in u.terms.items():
            if any(e[i] < der[i] for i in range(2 * n)):
                continue
            w = 1
            for i in range(2 * n):
                w *= perm(e[i], der[i])
            new = tuple(e[i] - der[i] + mult[i] for i in range(2 * n))
            val = (v * c * w).times_minus_i_pow(order)
            acc[new] = acc[new] + val if new in acc else val
        out = out + Polynomial(2 * n, acc)
    return out


# expression trees -------------------------------------------------------

def normal_order(expr, dim_n: int | None = None) -> NCPolynomial:
    """Reduce an operator expression tree to normal form.

    Accepted trees: an ``NCPolynomial``; a scalar; ``("gen", kind, j)`` with
    zero-based ``j``; ``("add", a, b)``, ``("sub", a, b)``, ``("mul", a, b)``,
    ``("neg", a)``, ``("pow", a, k)``. Products keep the written order.
    """
    if dim_n is None:
        dim_n = max(_max_index(expr) + 1, 1)

    def ev(node) -> NCPolynomial:
        if isinstance(node, NCPolynomial):
            if node.dim_n != dim_n:
                raise ValueError("dimension mismatch in expression")
            return node
        if isinstance(node, (int, float, complex, QQi)):
            return NCPolynomial.identity(dim_n, node)
        op = node[0]
        if op == "gen":
            return NCPolynomial.generator(node[1], node[2], dim_n)
        if op == "add":
            return ev(node[1]) + ev(node[2])
        if op == "sub":
            return ev(node[1]) - ev(node[2])
        if op == "mul":
            return multiply(ev(node[1]), ev(node[2]))
        if op == "neg":
            return -ev(node[1])
        if op == "pow":
            k = node[2]
            if not isinstance(k, int) or k < 0:
                raise ValueError("negative or non-integer power in operator expression")
            return ev(node[1]) ** k
        raise ValueError(f"unknown expression node {op!r}")

    return ev(expr)


def _max_index(node) -> int:
    if isinstance(node, NCPolynomial):
        return node.dim_n - 1
    if isinstance(node, tuple):
        if node[0] == "gen":
            return node[2]
        return max((_max_index(c) for c in node[1:] if isinstance(c, (tuple, NCPolynomial))), default=-1)
    return -1


# helpers used across tests and the CLI ------------------------------------

def generators(dim_n: int) -> Dict[str, list]:
    """``{"x": [x_1..x_N], "y": [...], "Dx": [...], "Dy": [...]}``."""
    return {k: [NCPolynomial.generator(k, j, dim_n) for j in range(dim_n)] for k in KINDS}


def twisted_laplacian() -> NCPolynomial:
    """``(Dx + y/2)^2 + (Dy - x/2)^2`` on R^2."""
    g = generators(1)
    x, y, dx, dy = g["x"][0], g["y"][0], g["Dx"][0], g["Dy"][0]
    half = QQi(1, 0) / 2
    return (dx + y * half) ** 2 + (dy - x * half) ** 2


def random_operator(dim_n: int, degree: int, n_terms: int, rng: random.Random,
                    coeff_range: int = 5) -> NCPolynomial:
    """Random operator with small Gaussian-integer coefficients over a rational scale."""
    terms: Dict[Key, QQi] = {}
    for _ in range(n_terms):
        d = rng.randint(0, degree)
        key = [0] * (4 * dim_n)
        for _ in range(d):
            key[rng.randrange(4 * dim_n)] += 1
        re = rng.randint(-coeff_range, coeff_range)
        im = rng.randint(-coeff_range, coeff_range)
        den = rng.choice((1, 1, 2, 3))
        terms[tuple(key)] = QQi(re, im) / den
    return NCPolynomial(dim_n, terms)


def random_polynomial(nvars: int, degree: int, n_terms: int, rng: random.Random,
                      coeff_range: int = 5) -> Polynomial:
    terms: Dict[Tuple[int, ...], QQi] = {}
    for _ in range(n_terms):
        d = rng.randint(0, degree)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = QQi(rng.randint(-coeff_range, coeff_range), rng.randint(-coeff_range, coeff_range))
    return Polynomial(nvars, terms)


def commute(vectors: Iterable[NCPolynomial]) -> bool:
    vec = list(vectors)
    return all(commutator(a, b).is_zero() for a, b in itertools.combinations(vec, 2))


def sum_ops(ops: Sequence[NCPolynomial], dim_n: int) -> NCPolynomial:
    out = NCPolynomial.zero(dim_n)
    for o in ops:
        out = out + o
    return out
