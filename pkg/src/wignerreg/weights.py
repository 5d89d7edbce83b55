"""Weight functions, Young conjugates and direct sums over coordinates.

Two families are provided:

* ``gevrey``: ``omega(t) = t^(1/sigma)``, sigma > 1; normalized by default to
  ``max(t^(1/sigma), 1) - 1`` so that omega vanishes on [0, 1].
* ``logpow``: ``omega(t) = beta * log(1 + t)``, beta >= 1; not normalized by
  default (it already vanishes at 0). Its normalized form is
  ``max(beta * log((1 + t) / 2), 0)``.

``phi(t) = omega(e^t)`` and the Young conjugate is
``phi*(s) = sup_{t >= 0} (t s - phi(t))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

FAMILIES = ("gevrey", "logpow")

CONJUGATE_TOL = 1e-9
SLACK_TOL = 1e-7


@dataclass(frozen=True)
class WeightFunction:
    family: str
    param: float
    normalized: Optional[bool] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown weight family {self.family!r}; expected one of {FAMILIES}")
        p = float(self.param)
        if not math.isfinite(p):
            raise ValueError("weight parameter must be finite")
        if self.family == "gevrey" and p <= 1:
            raise ValueError("gevrey weights need sigma > 1")
        if self.family == "logpow" and p < 1:
            raise ValueError("logpow weights need beta >= 1")
        object.__setattr__(self, "param", p)
        if self.normalized is None:
            object.__setattr__(self, "normalized", self.family == "gevrey")

    # the weight -----------------------------------------------------------
    def __call__(self, x):
        """``omega(|x|)``; accepts scalars or arrays."""
        x = np.abs(np.asarray(x, dtype=float))
        if not np.all(np.isfinite(x)):
            raise ValueError("weights are only defined at finite points")
        if self.family == "gevrey":
            r = x ** (1.0 / self.param)
            out = np.maximum(r, 1.0) - 1.0 if self.normalized else r
        else:
            out = self.param * np.log1p(x)
            if self.normalized:
                out = np.maximum(out - self.param * math.log(2.0), 0.0)
        return float(out) if out.ndim == 0 else out

    def phi(self, t):
        """``phi(t) = omega(e^t)`` for ``t >= 0``, computed without overflow."""
        t = np.asarray(t, dtype=float)
        if self.family == "gevrey":
            out = np.exp(t / self.param) - (1.0 if self.normalized else 0.0)
        else:
            out = self.param * (t + np.log1p(np.exp(-t)))
            if self.normalized:
                out = out - self.param * math.log(2.0)
        return float(out) if out.ndim == 0 else out

    # constants of the defining conditions ------------------------------------
    @property
    def K(self) -> float:
        """Constant in ``omega(2x) <= K (1 + omega(x))``."""
        if self.family == "gevrey":
            return 2.0 ** (1.0 / self.param)
        return max(1.0, self.param * math.log(2.0))

    @property
    def a(self) -> float:
        if self.family == "gevrey":
            return -1.0
        return -self.param * math.log(2.0) if self.normalized else 0.0

    @property
    def b(self) -> float:
        """Constant in ``omega(x) >= a + b log(1 + x)``."""
        if self.family == "gevrey":
            return 1.0 / (2.0 * self.param)
        return self.param

    def slope_limit(self) -> float:
        """``lim phi(t)/t``; the conjugate is infinite beyond it."""
        return math.inf if self.family == "gevrey" else self.param

    def spec(self) -> str:
        base = f"{self.family}:{self.param:g}"
        default = self.family == "gevrey"
        if self.normalized != default:
            base += ":norm" if self.normalized else ":raw"
        return base

    def as_normalized(self) -> "WeightFunction":
        return WeightFunction(self.family, self.param, True)


def eval_weight(w: WeightFunction, x: float) -> float:
    if not math.isfinite(x):
        raise ValueError("weights are only defined at finite points")
    return float(w(x))


def young_conjugate_closed(w: WeightFunction, s: float) -> float:
    """Closed form of ``phi*`` for the two families."""
    if s < 0:
        raise ValueError("the Young conjugate is defined for s >= 0")
    p = w.param
    if w.family == "gevrey":
        shift = 0.0 if w.normalized else -1.0
        if p * s >= 1:
            return p * s * math.log(p * s) - p * s + 1.0 + shift
        return 0.0 + shift
    shift = p * math.log(2.0) if w.normalized else 0.0
    if s > p:
        return math.inf
    if s == p:
        return shift
    if s < p / 2:
        return -p * math.log(2.0) + shift
    return s * math.log(s / (p - s)) - p * math.log(p / (p - s)) + shift


def young_conjugate(w: WeightFunction, s: float, tol: float = CONJUGATE_TOL) -> float:
    """``sup_{t >= 0} (t s - phi(t))`` by bracketed 1-D maximization."""
    if s < 0:
        raise ValueError("the Young conjugate is defined for s >= 0")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def objective(t):
        return t * s - w.phi(t)

    if w.family == "gevrey":
        upper = w.param * math.log(w.param * s + 2.0) + 10.0
    else:
        # the objective is concave; double until it stops increasing
        upper = 1.0
        while objective(2 * upper) > objective(upper) + 0.25 * tol:
            upper *= 2
            if upper > 1e6:
                return math.inf
        upper *= 2
    res = optimize.minimize_scalar(lambda t: -objective(t), bounds=(0.0, upper), method="bounded",
                                   options={"xatol": min(tol, 1e-10) * max(1.0, upper)})
    return float(max(-res.fun, objective(0.0), objective(upper)))


@dataclass(frozen=True)
class DirectSumWeight:
    """``W(x) = sum_j omega_j(|x_j|)``."""

    components: Tuple[WeightFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a direct sum needs at least one component")

    def __len__(self):
        return len(self.components)

    def __iter__(self) -> Iterator[WeightFunction]:
        return iter(self.components)

    @property
    def K(self) -> float:
        return max(c.K for c in self.components)

    def __call__(self, x) -> np.ndarray:
        """Evaluate on points with last axis of length ``d``."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != len(self.components):
            raise ValueError(f"expected {len(self.components)} coordinates, got {x.shape[-1]}")
        out = sum(c(x[..., j]) for j, c in enumerate(self.components))
        return out

    def on_axes(self, axes: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate on the tensor grid spanned by 1-D coordinate arrays."""
        if len(axes) != len(self.components):
            raise ValueError(f"expected {len(self.components)} axes, got {len(axes)}")
        d = len(axes)
        total = np.zeros([len(a) for a in axes])
        for j, (c, a) in enumerate(zip(self.components, axes)):
            shape = [1] * d
            shape[j] = len(a)
            total = total + np.asarray(c(a)).reshape(shape)
        return total

    def spec(self) -> str:
        return ",".join(c.spec() for c in self.components)

    def concat(self, other: "DirectSumWeight") -> "DirectSumWeight":
        return DirectSumWeight(self.components + other.components)


def eval_direct_sum(W: DirectSumWeight, x: Sequence[float]) -> float:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) != len(W):
        raise ValueError(f"point has dimension {x.size}, weight has {len(W)} components")
    return float(W(x))


def eval_conjugate_sum(W: DirectSumWeight, y: Sequence[float], tol: float = CONJUGATE_TOL) -> float:
    """``sum_j phi*_{omega_j}(y_j)``."""
    y = list(map(float, y))
    if len(y) != len(W):
        raise ValueError(f"point has dimension {len(y)}, weight has {len(W)} components")
    if any(v < 0 for v in y):
        raise ValueError("conjugate sums need nonnegative entries")
    return float(sum(young_conjugate(c, v, tol) for c, v in zip(W.components, y)))


@dataclass(frozen=True)
class WeightQuadruple:
    """``Omega`` and ``Sigma`` on ``(x, y)`` in R^{2N}: first N components for x."""

    Omega: DirectSumWeight
    Sigma: DirectSumWeight

    def __post_init__(self):
        if len(self.Omega) != len(self.Sigma):
            raise ValueError("Omega and Sigma must have the same number of components")
        if len(self.Omega) % 2:
            raise ValueError("a weight quadruple lives on R^{2N}; the length must be even")

    @property
    def dim_n(self) -> int:
        return len(self.Omega) // 2

    def __iter__(self):
        return iter((self.Omega, self.Sigma))

    def spec(self) -> dict:
        return {"omega": self.Omega.spec(), "sigma": self.Sigma.spec()}


def derive_weights(q: WeightQuadruple) -> WeightQuadruple:
    """``Omega_1 = (omega_1, sigma_2)`` and ``Sigma_1 = (sigma_1, omega_2)`` blockwise."""
    n = q.dim_n
    om, sg = q.Omega.components, q.Sigma.components
    return WeightQuadruple(DirectSumWeight(om[:n] + sg[n:]), DirectSumWeight(sg[:n] + om[n:]))


# specs ------------------------------------------------------------------

def parse_weight(spec: str) -> WeightFunction:
    """``family:param[:norm|:raw]``."""
    parts = [p.strip() for p in spec.strip().split(":")]
    if len(parts) not in (2, 3) or not parts[0]:
        raise ValueError(f"bad weight spec {spec!r}; expected e.g. gevrey:2.0")
    try:
        param = float(parts[1])
    except ValueError:
        raise ValueError(f"bad weight parameter in {spec!r}") from None
    normalized = None
    if len(parts) == 3:
        if parts[2] not in ("norm", "raw"):
            raise ValueError(f"bad normalization flag in {spec!r}; use norm or raw")
        normalized = parts[2] == "norm"
    return WeightFunction(parts[0], param, normalized)


def parse_direct_sum(spec: str, length: Optional[int] = None) -> DirectSumWeight:
    """Comma list of weights; a single entry is repeated to ``length``."""
    comps = [parse_weight(s) for s in spec.split(",") if s.strip()]
    if not comps:
        raise ValueError("empty weight list")
    if length is not None:
        if len(comps) == 1:
            comps = comps * length
        elif len(comps) != length:
            raise ValueError(f"weight list has {len(comps)} entries, expected {length}")
    return DirectSumWeight(tuple(comps))


# numeric property checks --------------------------------------------------

def condition_alpha_violation(w: WeightFunction, xs: np.ndarray) -> float:
    """max of ``omega(2x) - K (1 + omega(x))`` (nonpositive when the condition holds)."""
    xs = np.asarray(xs, dtype=float)
    return float(np.max(w(2 * xs) - w.K * (1 + w(xs))))


def condition_gamma_violation(w: WeightFunction, xs: np.ndarray) -> float:
    xs = np.asarray(xs, dtype=float)
    return float(np.max(w.a + w.b * np.log1p(xs) - w(xs)))


def condition_delta_violation(w: WeightFunction, ts: np.ndarray) -> float:
    """Worst midpoint-convexity defect of ``phi`` over all pairs of ``ts``."""
    ts = np.asarray(ts, dtype=float)
    a, b = np.meshgrid(ts, ts)
    return float(np.max(w.phi((a + b) / 2) - (w.phi(a) + w.phi(b)) / 2))


def prop1_violation(w: WeightFunction, lam: float, js: Sequence[int], xs: np.ndarray) -> float:
    """max over samples of ``log(x^j exp(-lam omega(x))) - lam phi*(j/lam)``.

    Nonpositive (up to rounding) when the inequality holds. Log space keeps
    the comparison meaningful when both sides reach 1e40.
    """
    xs = np.asarray(xs, dtype=float)
    worst = -math.inf
    with np.errstate(divide="ignore"):
        logx = np.log(xs)
    for j in js:
        if j / lam > w.slope_limit():
            continue
        rhs = lam * young_conjugate(w, j / lam)
        lhs = j * logx - lam * w(xs) if j else -lam * w(xs)
        worst = max(worst, float(np.max(lhs) - rhs))
    return worst


def prop2_ratio(w: WeightFunction, lam: float, xs: np.ndarray, j_max: int = 200) -> float:
    """max over ``x >= 1`` of ``inf_j x^-j exp(lam phi*(j/lam))`` divided by its bound.

    Computed in log space; values ``<= 1`` mean the inequality holds.
    """
    xs = np.asarray(xs, dtype=float)
    js = [j for j in range(1, j_max + 1) if j / lam <= w.slope_limit()]
    conj = np.array([lam * young_conjugate(w, j / lam) for j in js])
    js_arr = np.array(js, dtype=float)
    worst = -math.inf
    for x in xs:
        if x < 1:
            continue
        lhs = np.min(conj - js_arr * math.log(x))
        rhs = -(lam - 1 / w.b) * w(x) - w.a / w.b
        worst = max(worst, float(lhs - rhs))
    return math.exp(worst)


def prop4_constant(w: WeightFunction, lam: float, j_max: int = 20) -> float:
    """Smallest ``C`` with ``j! <= C exp(lam phi*(j/lam))`` for ``j <= j_max``."""
    best = 0.0
    for j in range(j_max + 1):
        if j / lam > w.slope_limit():
            continue
        best = max(best, math.exp(math.lgamma(j + 1) - lam * young_conjugate(w, j / lam)))
    return best


def prop5_violation(W: DirectSumWeight, xs: np.ndarray, ys: np.ndarray) -> float:
    """max of ``W(x+y) - K (d + W(x) + W(y))`` over paired rows of ``xs`` and ``ys``."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    ys = np.atleast_2d(np.asarray(ys, dtype=float))
    lhs = W(xs + ys)
    rhs = W.K * (len(W) + W(xs) + W(ys))
    return float(np.max(lhs - rhs))


def lp_mass(w: WeightFunction, lam: float, p: float, dim: int, radius: float) -> float:
    """``int_{|x| <= radius} exp(-lam p omega(|x|)) dx`` over R^dim (radial weight)."""
    sphere = 2 * math.pi ** (dim / 2) / math.gamma(dim / 2)

    def f(r):
        return math.exp(-lam * p * float(w(r))) * r ** (dim - 1)

    # split at powers of ten so quad resolves the slowly decaying tail
    edges = [0.0] + [10.0 ** k for k in range(0, int(math.log10(max(radius, 1.0))) + 1)]
    edges = [e for e in edges if e < radius] + [radius]
    total = sum(integrate.quad(f, lo, hi, limit=200)[0] for lo, hi in zip(edges[:-1], edges[1:]))
    return sphere * total


def lp_threshold(w: WeightFunction, p: float, dim: int) -> float:
    """``N / (b p)``."""
    return dim / (w.b * p)
