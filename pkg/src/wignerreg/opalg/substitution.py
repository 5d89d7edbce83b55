"""Generator substitutions and the Wigner conjugation maps.

A substitution sends the generator families ``(x, y, Dx, Dy)`` to vectors of
operators and extends to monomials factor by factor in the normal-form order
``X^a Y^b DX^g DY^m``. Each image vector must be internally commuting,
otherwise ``X^a`` is ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ncpoly import KINDS, NCPolynomial, commute, multiply
from .numbers import QQi


class CommutationError(ValueError):
    """An image vector of a substitution is not pairwise commuting."""


Matrix = Tuple[Tuple[QQi, ...], ...]


@dataclass(frozen=True)
class SubstitutionMap:
    """Images of ``(x_j, y_j, Dx_j, Dy_j)``, one list of N operators per kind.

    ``matrix`` is set for linear maps: row ``g`` holds the coefficients of the
    image of generator ``g`` on ``(x_j, y_j, Dx_j, Dy_j)``, the same for every j.
    """

    images: Tuple[Tuple[NCPolynomial, ...], ...]
    matrix: Optional[Matrix] = None
    name: str = ""

    @property
    def dim_n(self) -> int:
        return len(self.images[0])

    @property
    def linear(self) -> bool:
        return self.matrix is not None

    def check(self) -> None:
        """Raise :class:`CommutationError` unless each image vector commutes."""
        for kind, vec in zip(KINDS, self.images):
            if not commute(vec):
                raise CommutationError(f"images of {kind} do not commute in map {self.name!r}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence], dim_n: int, name: str = "") -> "SubstitutionMap":
        m = tuple(tuple(QQi.coerce(v) for v in row) for row in matrix)
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise ValueError("a linear generator map needs a 4x4 matrix")
        gens = [[NCPolynomial.generator(k, j, dim_n) for j in range(dim_n)] for k in KINDS]
        images = []
        for row in m:
            vec = []
            for j in range(dim_n):
                img = NCPolynomial.zero(dim_n)
                for col, c in enumerate(row):
                    if c:
                        img = img + gens[col][j].scale(c)
                vec.append(img)
            images.append(tuple(vec))
        return cls(tuple(images), m, name)

    def inverse(self) -> "SubstitutionMap":
        """Inverse of a linear map, by exact Gauss-Jordan on its 4x4 matrix."""
        if self.matrix is None:
            raise ValueError("only linear maps carry an explicit inverse")
        return SubstitutionMap.from_matrix(invert_matrix(self.matrix), self.dim_n,
                                           name=f"{self.name}-inverse")


def invert_matrix(m: Sequence[Sequence[QQi]]) -> Matrix:
    size = len(m)
    a = [[QQi.coerce(v) for v in row] + [QQi(int(i == j)) for j in range(size)]
         for i, row in enumerate(m)]
    for col in range(size):
        piv = next((r for r in range(col, size) if a[r][col]), None)
        if piv is None:
            raise ValueError("generator matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = QQi(1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(tuple(row[size:]) for row in a)


def substitute(P: NCPolynomial, S: SubstitutionMap, check: bool = True) -> NCPolynomial:
    """Replace every generator of ``P`` by its image under ``S`` and normal-order."""
    n = P.dim_n
    if S.dim_n != n:
        raise ValueError(f"dimension mismatch: operator N={n}, map N={S.dim_n}")
    if check:
        S.check()
    powers: Dict[Tuple[int, int, int], NCPolynomial] = {}
    one = NCPolynomial.identity(n)

    def power(kind: int, j: int, k: int) -> NCPolynomial:
        key = (kind, j, k)
        if key not in powers:
            powers[key] = one if k == 0 else multiply(power(kind, j, k - 1), S.images[kind][j])
        return powers[key]

    # memoize partial products over key prefixes; random operators share many
    prefix: Dict[Tuple[int, ...], NCPolynomial] = {(): one}

    def product(key: Tuple[int, ...]) -> NCPolynomial:
        if key in prefix:
            return prefix[key]
        head = product(key[:-1])
        pos = len(key) - 1
        k = key[-1]
        val = head if k == 0 else multiply(head, power(pos // n, pos % n, k))
        prefix[key] = val
        return val

    acc: Dict[Tuple[int, ...], QQi] = {}
    for key, c in P.items():
        for k2, v in product(key)._terms.items():
            w = v * c
            acc[k2] = acc[k2] + w if k2 in acc else w
    return NCPolynomial._raw(n, acc)


# Wigner maps ------------------------------------------------------------

H = Fraction(1, 2)

# rows: images of x, y, Dx, Dy in terms of (x, y, Dx, Dy) of the same coordinate
BAR_MATRIX = (
    (H, H, 0, 0),      # x  -> (x + y)/2
    (0, 0, H, -H),     # y  -> (Dx - Dy)/2
    (0, 0, 1, 1),      # Dx -> Dx + Dy
    (-1, 1, 0, 0),     # Dy -> y - x
)

TILDE_MATRIX = (
    (1, 0, 0, -H),     # x  -> x - Dy/2
    (1, 0, 0, H),      # y  -> x + Dy/2
    (0, 1, H, 0),      # Dx -> y + Dx/2
    (0, -1, H, 0),     # Dy -> Dx/2 - y
)


def bar_map(dim_n: int) -> SubstitutionMap:
    return SubstitutionMap.from_matrix(BAR_MATRIX, dim_n, "wigner-bar")


def tilde_map(dim_n: int) -> SubstitutionMap:
    return SubstitutionMap.from_matrix(TILDE_MATRIX, dim_n, "wigner-tilde")


def wig_bar(P: NCPolynomial) -> NCPolynomial:
    """Operator ``Pbar`` with ``P Wig[u] = Wig[Pbar u]``."""
    return substitute(P, bar_map(P.dim_n))


def wig_tilde(P: NCPolynomial) -> NCPolynomial:
    """Operator ``Ptilde`` with ``Wig[P u] = Ptilde Wig[u]``."""
    return substitute(P, tilde_map(P.dim_n))


def wig_bar_inverse(P: NCPolynomial) -> NCPolynomial:
    return substitute(P, bar_map(P.dim_n).inverse())


def wig_tilde_inverse(P: NCPolynomial) -> NCPolynomial:
    return substitute(P, tilde_map(P.dim_n).inverse())


def identity_map(dim_n: int) -> SubstitutionMap:
    return SubstitutionMap.from_matrix([[int(i == j) for j in range(4)] for i in range(4)], dim_n, "identity")


def image_table(S: SubstitutionMap) -> List[Tuple[str, int, NCPolynomial]]:
    """Flat list ``(kind, j, image)`` for reporting."""
    return [(k, j, S.images[i][j]) for i, k in enumerate(KINDS) for j in range(S.dim_n)]
