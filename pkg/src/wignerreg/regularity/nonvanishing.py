"""Sound but incomplete certification that a complex polynomial has no real zero.

Three stages run in order:

1. structural: ``p = c + sum_k c_k z^(2 a_k)`` with real ``c > 0`` and
   ``c_k > 0`` gives ``|p| >= c`` everywhere;
2. interval: branch and bound on ``|p|^2`` over the box ``[-R, R]^d``, plus a
   bound outside the box from the leading form ``p_m``: with
   ``mu = min |p_m|`` on the unit sup-norm sphere and ``nu_k`` the sum of
   absolute coefficients of degree ``k``, ``|p(z)| > 0`` whenever
   ``mu rho^m > sum_{k<m} nu_k rho^k`` for ``rho = |z|_inf``;
3. sampling: dense and random points in the box refined by least squares.

ZERO_FOUND is only reported for points with
``|p(point)| <= 1e-9 (1 + ||coeffs||)``; everything uncertain is INCONCLUSIVE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from ..opalg.poly import Polynomial
from .interval import CompiledPolynomial, branch_and_bound

NONVANISHING = "NONVANISHING"
ZERO_FOUND = "ZERO_FOUND"
INCONCLUSIVE = "INCONCLUSIVE"

SOS_PLUS_CONSTANT = "SOS_PLUS_CONSTANT"
INTERVAL = "INTERVAL"
SAMPLING = "SAMPLING"

DEFAULT_BOX = 10.0
DEFAULT_DEPTH = 14
ZERO_REL_TOL = 1e-9


@dataclass(frozen=True)
class Certificate:
    status: str
    method: str
    bound: Optional[float]
    box: float
    point: Optional[Tuple[float, ...]] = None
    depth: int = DEFAULT_DEPTH
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.status == NONVANISHING and not (self.bound is not None and self.bound > 0):
            raise ValueError("a NONVANISHING certificate needs a positive bound")
        if self.status == ZERO_FOUND and self.point is None:
            raise ValueError("a ZERO_FOUND certificate needs a point")

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "bound": self.bound,
            "box": self.box,
            "depth": self.depth,
            "point": list(self.point) if self.point is not None else None,
            "notes": list(self.notes),
        }


def zero_tolerance(p: Polynomial) -> float:
    return ZERO_REL_TOL * (1.0 + p.coefficient_norm())


def structural_bound(p: Polynomial) -> Optional[float]:
    """``c`` when ``p - c`` is a positive combination of even monomials, else None."""
    if p.is_zero() or not p.is_real():
        return None
    c = p.coefficient((0,) * p.nvars)
    if not c.is_real() or c.re <= 0:
        return None
    for e, coef in p.items():
        if not any(e):
            continue
        if any(k % 2 for k in e) or coef.re <= 0:
            return None
    return float(c.re)


def leading_form_radius(p: Polynomial, box_radius: float, max_depth: int) -> Tuple[Optional[float], str]:
    """Smallest tested radius beyond which the leading form keeps ``p`` away from zero.

    Returns ``(radius, note)``; radius is None when the leading form cannot be
    certified positive on the unit sup-norm sphere.
    """
    d, m = p.nvars, p.degree()
    if m == 0:
        return (box_radius if not p.is_zero() else None), "constant polynomial"
    lead = CompiledPolynomial(p.homogeneous_part(m))
    centers, radii = [], []
    for j in range(d):
        for s in (-1.0, 1.0):
            c = np.zeros(d)
            c[j] = s
            r = np.ones(d)
            r[j] = 0.0
            centers.append(c)
            radii.append(r)
    status, bound, _ = branch_and_bound(lead, np.array(centers), np.array(radii), max_depth + 2 * d,
                                        zero_tol=0.0, gap=0.5)
    if status != "certified":
        return None, "leading form not certified positive on the unit sphere"
    mu = math.sqrt(bound)
    nu = [0.0] * m
    for e, c in p.items():
        k = sum(e)
        if k < m:
            nu[k] += abs(c)

    def ok(rho):
        return mu * rho ** m > sum(nu[k] * rho ** k for k in range(m))

    rho = box_radius
    while not ok(rho):
        rho *= 2
        if rho > 1e6 * box_radius:
            return None, "leading form bound needs an unreasonably large box"
    return rho, f"leading form min on unit sphere >= {mu:.6g}"


def _sample_zero(p: Polynomial, cp: CompiledPolynomial, radius: float, tol: float,
                 seed: int = 0) -> Optional[np.ndarray]:
    d = p.nvars
    per_axis = max(3, int(round((2e5) ** (1.0 / d))) | 1)
    per_axis = min(per_axis, 2001)
    axes = [np.linspace(-radius, radius, per_axis)] * d
    grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    rng = np.random.default_rng(seed)
    pts = np.concatenate([np.zeros((1, d)), grid, rng.uniform(-radius, radius, size=(10000, d))])
    vals = np.abs(cp(pts))
    hit = np.nonzero(vals <= tol)[0]
    if hit.size:
        return pts[hit[np.argmin(np.linalg.norm(pts[hit], axis=1))]]
    order = np.argsort(vals)[:24]

    def resid(z):
        v = cp(z[None, :])[0]
        return np.array([v.real, v.imag])

    for i in order:
        try:
            sol = optimize.least_squares(resid, pts[i], xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=200 * (d + 1))
        except (ValueError, FloatingPointError):
            continue
        z = sol.x
        if np.all(np.isfinite(z)) and abs(cp(z[None, :])[0]) <= tol:
            return z
    return None


def nonvanishing(p: Polynomial, box_radius: float = DEFAULT_BOX, max_depth: int = DEFAULT_DEPTH) -> Certificate:
    """Decide, soundly but incompletely, whether ``p`` vanishes somewhere on ``R^d``."""
    if not (box_radius > 0 and math.isfinite(box_radius)):
        raise ValueError("box_radius must be positive and finite")
    if int(max_depth) != max_depth or max_depth < 1:
        raise ValueError("max_depth must be a positive integer")
    max_depth = int(max_depth)
    d = p.nvars
    tol = zero_tolerance(p)
    if p.is_zero():
        return Certificate(ZERO_FOUND, SAMPLING, 0.0, box_radius, (0.0,) * d, max_depth, ("zero polynomial",))

    c = structural_bound(p)
    if c is not None:
        return Certificate(NONVANISHING, SOS_PLUS_CONSTANT, c * c, box_radius, None, max_depth,
                           ("constant plus positive even monomials",))

    used = p.used_variables()
    if len(used) < d:
        # p is constant along the other axes: decide on the used ones, pad points with zeros
        if not used:
            return Certificate(NONVANISHING, INTERVAL, abs(complex(p.coefficient((0,) * d))) ** 2,
                               box_radius, None, max_depth, ("nonzero constant",))
        sub = nonvanishing(p.restrict(used), box_radius, max_depth)
        point = None
        if sub.point is not None:
            full = [0.0] * d
            for i, v in zip(used, sub.point):
                full[i] = v
            point = tuple(full)
        notes = sub.notes + (f"reduced to variables {[i + 1 for i in used]}",)
        return Certificate(sub.status, sub.method, sub.bound, sub.box, point, max_depth, notes)

    cp = CompiledPolynomial(p)
    notes = []
    radius, note = leading_form_radius(p, box_radius, max_depth)
    notes.append(note)
    search = radius if radius is not None else box_radius
    if radius is not None and radius > box_radius:
        notes.append(f"box enlarged to {radius:g} so the leading form covers the exterior")
    status, bound, point = branch_and_bound(cp, np.zeros((1, d)), np.full((1, d), search), max_depth, tol)
    if status == "zero":
        return Certificate(ZERO_FOUND, SAMPLING, 0.0, search, tuple(float(v) for v in point), max_depth,
                           tuple(notes + ["zero at a box centre"]))
    if status == "certified" and radius is not None:
        return Certificate(NONVANISHING, INTERVAL, bound, search, None, max_depth, tuple(notes))
    if status == "certified":
        notes.append("box certified but the exterior is not controlled")
    else:
        notes.append("branch and bound did not certify the box")

    z = _sample_zero(p, cp, search, tol)
    if z is not None:
        return Certificate(ZERO_FOUND, SAMPLING, 0.0, search, tuple(float(v) for v in z), max_depth, tuple(notes))
    method = INTERVAL if status == "certified" else SAMPLING
    return Certificate(INCONCLUSIVE, method, bound if status == "certified" else None, search, None,
                       max_depth, tuple(notes))
