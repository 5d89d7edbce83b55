"""Continuum-normalized FFTs, the symmetric coordinate change, Wig, STFT and Cohen maps.

Forward transforms approximate ``int exp(-i u v) f(v) dv`` with the
rectangle rule (factor ``h``) and explicit phases for the grid offset;
inverse transforms approximate ``(2 pi)^-1 int exp(i u v) F(u) du``. On the
discrete level the pair is an exact inverse.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..opalg.kernel import KernelSpec
from .grid import FREQ, SPACE, Axis, Grid, GridFunction


def _transform_axis(data: np.ndarray, axis: int, src: Axis, dst: Axis, inverse: bool) -> np.ndarray:
    n = src.n
    v0, hv = src.start, src.step
    u0, du = dst.start, dst.step
    k = np.arange(n)
    shape = [1] * data.ndim
    shape[axis] = n
    sign = 1.0 if inverse else -1.0
    pre = np.exp(sign * 1j * u0 * k * hv).reshape(shape)
    post = (np.exp(sign * 1j * u0 * v0) * np.exp(sign * 1j * k * du * v0)).reshape(shape)
    if inverse:
        out = np.fft.ifft(data * pre, axis=axis) * (n * hv / (2 * np.pi))
    else:
        out = np.fft.fft(data * pre, axis=axis) * hv
    return out * post


def fourier_transform(F: GridFunction, axes: Sequence[int], inverse: bool = False) -> GridFunction:
    """Transform along ``axes`` without tag checks; tags flip on each transformed axis."""
    data = np.asarray(F.samples)
    new_axes = list(F.axes)
    for ax in axes:
        src = F.axes[ax]
        dst = src.dual()
        data = _transform_axis(data, ax, src, dst, inverse)
        new_axes[ax] = dst
    return GridFunction(Grid(tuple(new_axes)), data)


def _block(F: GridFunction, block: str) -> list:
    d = F.dim
    if block == "all":
        return list(range(d))
    if d % 2:
        raise ValueError("block transforms need an even number of axes")
    n = d // 2
    if block == "first":
        return list(range(n))
    if block == "second":
        return list(range(n, d))
    raise ValueError(f"unknown block {block!r}; use first, second or all")


def partial_fourier(F: GridFunction, block: str, inverse: bool = False) -> GridFunction:
    """``F_1`` (block ``first``), ``F_2`` (``second``) or the full transform (``all``)."""
    axes = _block(F, block)
    want = FREQ if inverse else SPACE
    for ax in axes:
        if F.axes[ax].tag != want:
            raise ValueError(f"axis {ax} is tagged {F.axes[ax].tag!r}; "
                             f"{'inverse' if inverse else 'forward'} transform needs {want!r}")
    return fourier_transform(F, axes, inverse)


def fourier(F: GridFunction) -> GridFunction:
    return partial_fourier(F, "all")


def inverse_fourier(F: GridFunction) -> GridFunction:
    return partial_fourier(F, "all", inverse=True)


# symmetric change of variables ------------------------------------------

def _pair_count(F: GridFunction) -> int:
    if F.dim % 2:
        raise ValueError("the symmetric change acts on 2N-dimensional grids")
    return F.dim // 2


def symmetric_change(F: GridFunction) -> GridFunction:
    """``G(x, t) = F(x + t/2, x - t/2)`` by exact re-indexing.

    The ``t`` axis has step ``2h`` on ``[-2L, 2L)`` so ``x +- t/2`` are grid
    points: sample ``(k, m)`` reads ``(k + m - n/2, k - m + n/2)``. Reads that
    fall outside the grid give zero rather than wrapping around.
    """
    N = _pair_count(F)
    data = np.asarray(F.samples)
    axes = list(F.axes)
    for j in range(N):
        ax, ay = axes[j], axes[N + j]
        if ax != ay or ax.tag != SPACE:
            raise ValueError("symmetric change needs matching space axes in each (x_j, y_j) pair")
        n = ax.n
        k = np.arange(n)[:, None]
        m = np.arange(n)[None, :]
        i_idx = k + m - n // 2
        j_idx = k - m + n // 2
        valid = (i_idx >= 0) & (i_idx < n) & (j_idx >= 0) & (j_idx < n)
        moved = np.moveaxis(data, (j, N + j), (0, 1))
        picked = moved[np.clip(i_idx, 0, n - 1), np.clip(j_idx, 0, n - 1)]
        picked = np.where(valid.reshape(valid.shape + (1,) * (moved.ndim - 2)), picked, 0)
        data = np.moveaxis(picked, (0, 1), (j, N + j))
        axes[N + j] = Axis(n, 2 * ax.half_width, SPACE)
    return GridFunction(Grid(tuple(axes)), data)


def _half_shift(data: np.ndarray, axis: int, step: float, shift: float) -> np.ndarray:
    """Spectral translation ``f(v) -> f(v + shift)`` along one periodic axis."""
    n = data.shape[axis]
    freq = 2 * np.pi * np.fft.fftfreq(n, step)
    shape = [1] * data.ndim
    shape[axis] = n
    phase = np.exp(1j * freq * shift).reshape(shape)
    return np.fft.ifft(np.fft.fft(data, axis=axis) * phase, axis=axis)


def symmetric_change_inverse(G: GridFunction, fill: str = "spectral") -> GridFunction:
    """``F(a, b) = G((a + b)/2, a - b)``.

    Same-parity samples ``(i, j)`` are read exactly from ``k = (i+j)/2``,
    ``m = (i-j)/2 + n/2``. Opposite-parity samples sit half a cell off the
    ``(x, t)`` lattice; ``fill="spectral"`` reads them from a spectral shift of
    ``G`` by ``(h/2, h)``, ``fill="zero"`` leaves them at zero.
    """
    if fill not in ("spectral", "zero"):
        raise ValueError("fill must be 'spectral' or 'zero'")
    N = _pair_count(G)
    data = np.asarray(G.samples)
    axes = list(G.axes)
    for j in range(N):
        ax, at = axes[j], axes[N + j]
        if at.n != ax.n or not np.isclose(at.half_width, 2 * ax.half_width) or SPACE != ax.tag or SPACE != at.tag:
            raise ValueError("inverse symmetric change needs an (x, t) pair with t on the doubled axis")
        n = ax.n
        moved = np.moveaxis(data, (j, N + j), (0, 1))
        out = np.zeros_like(moved, dtype=complex)
        i = np.arange(n)[:, None]
        jj = np.arange(n)[None, :]
        even = (i + jj) % 2 == 0
        ie, je = np.nonzero(even)
        out[ie, je] = moved[(ie + je) // 2, (ie - je) // 2 + n // 2]
        if fill == "spectral":
            shifted = _half_shift(moved, 0, ax.step, ax.step / 2)
            shifted = _half_shift(shifted, 1, at.step, ax.step)
            io, jo = np.nonzero(~even)
            # shifted[k, m] = G(x_k + h/2, t_m + h) = F at (k + m + 1 - n/2, k - m + n/2)
            k = (io + jo - 1) // 2
            m = (io - jo - 1) // 2 + n // 2
            ok = (k >= 0) & (k < n) & (m >= 0) & (m < n)
            out[io[ok], jo[ok]] = shifted[k[ok], m[ok]]
        data = np.moveaxis(out, (0, 1), (j, N + j))
        axes[N + j] = Axis(n, ax.half_width, SPACE)
    return GridFunction(Grid(tuple(axes)), data)


# Wig and Cohen --------------------------------------------------------------

def wig(u: GridFunction) -> GridFunction:
    """``Wig[u] = F_2 T_z u``."""
    return partial_fourier(symmetric_change(u), "second")


def wig_inverse(W: GridFunction, fill: str = "spectral") -> GridFunction:
    """``Wig^-1 = T_z^-1 F_2^-1``."""
    return symmetric_change_inverse(partial_fourier(W, "second", inverse=True), fill)


def _kernel_grids(F: GridFunction):
    """Dual variables ``(xi_j)``, ``(eta_j)`` of the full transform of a Wig-grid function."""
    N = F.dim // 2
    mesh = np.meshgrid(*[a.dual().points for a in F.axes], indexing="ij", sparse=True)
    return mesh[:N], mesh[N:]


def cohen_multiplier(k: KernelSpec, F: GridFunction, use_q: bool = False) -> np.ndarray:
    if F.dim != 2 * k.dim_n:
        raise ValueError(f"kernel has N={k.dim_n} but the grid has {F.dim} axes")
    xi, eta = _kernel_grids(F)
    return k.kappa1_hat(xi, eta) if use_q else k.kappa_hat(xi, eta)


def apply_multiplier(F: GridFunction, mult: np.ndarray) -> GridFunction:
    """``F^-1(mult * F(F))`` over all axes, ignoring tags."""
    axes = list(range(F.dim))
    spec = fourier_transform(F, axes)
    return fourier_transform(spec.with_samples(spec.samples * mult), axes, inverse=True)


def cohen_from_wig(W: GridFunction, k: KernelSpec, use_q: bool = False) -> GridFunction:
    return apply_multiplier(W, cohen_multiplier(k, W, use_q))


def cohen_apply(k: KernelSpec, u: GridFunction, use_q: bool = False) -> GridFunction:
    """``Q[u] = kappa * Wig[u]`` (or ``Q_1`` with ``use_q``) as a Fourier multiplier."""
    W = wig(u)
    if k.is_wigner() and not use_q:
        return W
    return cohen_from_wig(W, k, use_q)


def cohen_inverse(k: KernelSpec, Q: GridFunction, use_q: bool = False, fill: str = "spectral") -> GridFunction:
    if use_q and k.q is not None and not k.q_is_certified():
        raise ValueError("inverting Q_1 needs a nonvanishing certificate for q; call certify_q() first")
    mult = cohen_multiplier(k, Q, use_q)
    W = apply_multiplier(Q, 1.0 / mult)
    return wig_inverse(W, fill)


# short-time Fourier transform ----------------------------------------------

def stft(f: GridFunction, g: GridFunction) -> GridFunction:
    """``V_g f(x, xi) = int exp(-i t xi) f(t) conj(g(t - x)) dt`` on the 2N grid.

    Window shifts use periodic indexing ``k - j + n/2 (mod n)``; test windows
    decay fast enough that the wrap is below rounding.
    """
    if not f.grid.same_as(g.grid):
        raise ValueError("f and g must share the same grid")
    N = f.dim
    idx_t = []
    idx_w = []
    for j, a in enumerate(f.axes):
        n = a.n
        shift = np.arange(n)[:, None]
        t = np.arange(n)[None, :]
        idx_t.append(t)
        idx_w.append((t - shift + n // 2) % n)
    # build the 2N array [x_1..x_N, t_1..t_N]
    full_t = []
    full_w = []
    for j in range(N):
        shape = [1] * (2 * N)
        shape[j] = f.axes[j].n
        shape[N + j] = f.axes[j].n
        full_t.append(np.broadcast_to(idx_t[j], (f.axes[j].n, f.axes[j].n)).reshape(shape))
        full_w.append(idx_w[j].reshape(shape))
    prod = np.asarray(f.samples)[tuple(full_t)] * np.conj(np.asarray(g.samples)[tuple(full_w)])
    axes = tuple(f.axes) + tuple(f.axes)
    out = GridFunction(Grid(axes), prod)
    return fourier_transform(out, list(range(N, 2 * N)))


def reflect_index(n: int) -> np.ndarray:
    """Index of ``-x_k`` on a centred axis (``x_0 = -L`` maps to itself by periodicity)."""
    return (n - np.arange(n)) % n
