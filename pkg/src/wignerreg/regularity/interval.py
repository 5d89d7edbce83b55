"""Box enclosures of complex polynomials by a centred Taylor form.

For a box with centre ``c`` and half-widths ``r`` the polynomial is expanded
as ``p(c + t) = sum_b a_b(c) t^b`` and every ``t^b`` is enclosed exactly
(``[0, r^b]`` for all-even ``b``, ``[-r^b, r^b]`` otherwise). Many boxes are
handled at once as rows of arrays. Expansion coefficients are computed in
float64; a rounding margin proportional to the magnitude of every term
involved is subtracted from lower and added to upper bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Tuple

import numpy as np

from ..opalg.poly import Polynomial

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Enclosure:
    re_lo: np.ndarray
    re_hi: np.ndarray
    im_lo: np.ndarray
    im_hi: np.ndarray

    def abs2_lower(self) -> np.ndarray:
        """Lower bound of ``|p|^2`` per box from the mignitudes of Re and Im."""
        return _mig(self.re_lo, self.re_hi) ** 2 + _mig(self.im_lo, self.im_hi) ** 2


def _mig(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.where((lo <= 0) & (hi >= 0), 0.0, np.minimum(np.abs(lo), np.abs(hi)))


class CompiledPolynomial:
    """Float form of a :class:`Polynomial` prepared for vectorized enclosures."""

    def __init__(self, p: Polynomial):
        self.poly = p
        self.dim = p.nvars
        items = list(p.items())
        if items:
            self.exps = np.array([e for e, _ in items], dtype=int).reshape(len(items), self.dim)
        else:
            self.exps = np.zeros((0, self.dim), dtype=int)
        self.coef = np.array([complex(c) for _, c in items], dtype=complex)
        self.degree = int(self.exps.sum(axis=1).max()) if items else 0
        # Taylor bookkeeping: pairs (term, shift) with binomial multiplicity
        betas = {}
        pair_term, pair_beta, pair_rest, pair_mult = [], [], [], []
        for t, e in enumerate(self.exps):
            for b in product(*[range(k + 1) for k in e]):
                idx = betas.setdefault(b, len(betas))
                pair_term.append(t)
                pair_beta.append(idx)
                pair_rest.append(tuple(int(k - j) for k, j in zip(e, b)))
                pair_mult.append(math.prod(math.comb(int(k), j) for k, j in zip(e, b)))
        self.betas = np.array(list(betas), dtype=int).reshape(len(betas), self.dim)
        self.pair_term = np.array(pair_term, dtype=int)
        self.pair_beta = np.array(pair_beta, dtype=int)
        self.pair_rest = np.array(pair_rest, dtype=int).reshape(len(pair_rest), self.dim)
        self.pair_coef = self.coef[self.pair_term] * np.array(pair_mult, dtype=float) if pair_term else np.zeros(0, complex)
        self.zero_beta = np.all(self.betas == 0, axis=1)
        self.odd_beta = np.any(self.betas % 2 == 1, axis=1)
        self.used = np.any(self.exps > 0, axis=0)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        """Values at ``points`` of shape ``(m, dim)``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if self.exps.shape[0] == 0:
            return np.zeros(pts.shape[0], dtype=complex)
        mono = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
        return mono @ self.coef

    def enclose(self, centers: np.ndarray, radii: np.ndarray) -> Enclosure:
        """Enclosures of Re p and Im p on the boxes ``centers +- radii`` (shape ``(m, dim)``)."""
        c = np.atleast_2d(np.asarray(centers, dtype=float))
        r = np.atleast_2d(np.asarray(radii, dtype=float))
        m = c.shape[0]
        if self.exps.shape[0] == 0:
            z = np.zeros(m)
            return Enclosure(z, z, z, z)
        # a_b(c) = sum over pairs of coef * mult * c^(e - b)
        cpow = np.prod(c[:, None, :] ** self.pair_rest[None, :, :], axis=2)
        contrib = cpow * self.pair_coef[None, :]
        a = np.zeros((m, len(self.betas)), dtype=complex)
        np.add.at(a.T, self.pair_beta, contrib.T)
        hi_t = np.prod(r[:, None, :] ** self.betas[None, :, :], axis=2)
        lo_t = np.where(self.odd_beta[None, :], -hi_t, 0.0)
        lo_t = np.where(self.zero_beta[None, :], 1.0, lo_t)
        hi_t = np.where(self.zero_beta[None, :], 1.0, hi_t)

        def bounds(coef):
            p1, p2 = coef * lo_t, coef * hi_t
            return np.minimum(p1, p2).sum(axis=1), np.maximum(p1, p2).sum(axis=1)

        re_lo, re_hi = bounds(a.real)
        im_lo, im_hi = bounds(a.imag)
        # rounding margin: every float operation is bounded by the absolute polynomial on the box
        mag = np.prod((np.abs(c) + r)[:, None, :] ** self.exps[None, :, :], axis=2) @ np.abs(self.coef)
        margin = 8 * _EPS * (self.degree + self.dim + len(self.betas) + 2) * mag
        return Enclosure(re_lo - margin, re_hi + margin, im_lo - margin, im_hi + margin)


def branch_and_bound(cp: CompiledPolynomial, centers: np.ndarray, radii: np.ndarray, max_depth: int,
                     zero_tol: float, gap: float = 1e-6,
                     max_boxes: int = 1 << 18) -> Tuple[str, float, np.ndarray | None]:
    """Certify ``|p|^2 > 0`` on a union of boxes by bisection and bound its infimum.

    A box is retired once its lower bound is positive and within relative
    ``gap`` of the smallest value seen at box centres; other boxes are split
    along their widest axis until ``max_depth``. Returns
    ``("certified", bound, None)``, ``("zero", |p|, point)`` when a centre
    evaluates below ``zero_tol`` in modulus, or ``("failed", bound, None)``
    when a box with nonpositive lower bound survives the depth or box budget.
    """
    c = np.atleast_2d(np.asarray(centers, dtype=float))
    r = np.atleast_2d(np.asarray(radii, dtype=float))
    # variables the polynomial ignores never need splitting
    r = np.where(cp.used[None, :], r, 0.0)
    best = math.inf
    upper = math.inf
    for depth in range(max_depth + 1):
        vals = np.abs(cp(c))
        hit = np.nonzero(vals <= zero_tol)[0]
        if hit.size:
            i = hit[np.argmin(np.linalg.norm(c[hit], axis=1))]
            return "zero", float(vals[i]), c[i].copy()
        upper = min(upper, float(np.min(vals)) ** 2)
        low = cp.enclose(c, r).abs2_lower()
        last = depth == max_depth or 4 * c.shape[0] > max_boxes
        done = (low > 0) & ((low >= upper * (1 - gap)) | last)
        if np.any(done):
            best = min(best, float(low[done].min()))
        c, r = c[~done], r[~done]
        if c.shape[0] == 0:
            return "certified", best, None
        if last:
            return "failed", best, None
        # bisect every open box along its widest axis
        ax = np.argmax(r, axis=1)
        rows = np.arange(c.shape[0])
        r = r.copy()
        r[rows, ax] /= 2
        left, right = c.copy(), c.copy()
        left[rows, ax] -= r[rows, ax]
        right[rows, ax] += r[rows, ax]
        c = np.concatenate([left, right])
        r = np.concatenate([r, r])
    return "failed", best, None
