"""Uniform tensor grids and sampled functions.

Every axis is centred: ``n`` points ``-L + k*h`` with ``h = 2L/n``. Taking a
continuum Fourier transform along an axis ``(n, L)`` produces the axis
``(n, n*pi/(2L))`` whose step is ``pi/L``; the map is an involution on axis
descriptions, so inverses need no extra bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence, Tuple

import numpy as np

SPACE = "s"
FREQ = "f"


@dataclass(frozen=True)
class Axis:
    n: int
    half_width: float
    tag: str = SPACE

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"axis length must be even and >= 2, got {self.n}")
        if not (self.half_width > 0 and math.isfinite(self.half_width)):
            raise ValueError("half_width must be positive and finite")
        if self.tag not in (SPACE, FREQ):
            raise ValueError(f"axis tag must be {SPACE!r} or {FREQ!r}")
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def start(self) -> float:
        return -self.half_width

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n)

    def dual(self, tag: str | None = None) -> "Axis":
        """Axis of the continuum Fourier variable."""
        new_tag = tag or (FREQ if self.tag == SPACE else SPACE)
        return Axis(self.n, self.n * math.pi / (2.0 * self.half_width), new_tag)

    def retag(self, tag: str) -> "Axis":
        return replace(self, tag=tag)


@dataclass(frozen=True)
class Grid:
    axes: Tuple[Axis, ...]

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if not self.axes:
            raise ValueError("a grid needs at least one axis")

    @classmethod
    def uniform(cls, dim: int, n: int, L: float, tag: str = SPACE) -> "Grid":
        return cls(tuple(Axis(n, L, tag) for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(a.n for a in self.axes)

    @property
    def cell_volume(self) -> float:
        return float(np.prod([a.step for a in self.axes]))

    def coords(self) -> Tuple[np.ndarray, ...]:
        return tuple(a.points for a in self.axes)

    def mesh(self) -> Tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays (open mesh)."""
        return tuple(np.meshgrid(*self.coords(), indexing="ij", sparse=True))

    def replace_axes(self, idx: Sequence[int], new: Sequence[Axis]) -> "Grid":
        axes = list(self.axes)
        for i, a in zip(idx, new):
            axes[i] = a
        return Grid(tuple(axes))

    def same_as(self, other: "Grid") -> bool:
        return self.axes == other.axes


@dataclass(frozen=True)
class GridFunction:
    grid: Grid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.asarray(self.samples, dtype=complex)
        if data.shape != self.grid.shape:
            raise ValueError(f"samples have shape {data.shape}, grid needs {self.grid.shape}")
        if not np.all(np.isfinite(data)):
            raise ValueError("grid function samples must be finite")
        data = data.copy()
        data.flags.writeable = False
        object.__setattr__(self, "samples", data)

    @property
    def dim(self) -> int:
        return self.grid.dim

    @property
    def axes(self) -> Tuple[Axis, ...]:
        return self.grid.axes

    def with_samples(self, samples: np.ndarray, grid: Grid | None = None) -> "GridFunction":
        return GridFunction(grid or self.grid, samples)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _same(self, other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _same(self, other)
        return self.with_samples(self.samples - other.samples)

    def __mul__(self, c) -> "GridFunction":
        return self.with_samples(self.samples * complex(c))

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples)))


def _same(a: GridFunction, b: GridFunction):
    if not a.grid.same_as(b.grid):
        raise ValueError("grid functions live on different grids")


def relative_error(a: GridFunction | np.ndarray, b: GridFunction | np.ndarray, eps: float = 1e-300) -> float:
    """``max|a - b| / max(max|a|, eps)``."""
    x = a.samples if isinstance(a, GridFunction) else np.asarray(a)
    y = b.samples if isinstance(b, GridFunction) else np.asarray(b)
    if x.shape != y.shape:
        raise ValueError("shape mismatch")
    num = float(np.max(np.abs(x - y))) if x.size else 0.0
    den = float(np.max(np.abs(x))) if x.size else 0.0
    if num == 0.0:
        return 0.0
    return num / max(den, eps)
