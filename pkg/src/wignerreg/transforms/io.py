"""Flat binary and CSV serialization of grid functions.

Binary layout (little endian): ``uint32 dim``, ``dim`` x ``uint32 n``,
``dim`` x ``float64 L``, ``dim`` tag bytes (``s`` or ``f``), then the samples
as ``complex64`` (real, imaginary float32 pairs) in row-major order.
"""

from __future__ import annotations

import csv
import io
import struct
from pathlib import Path
from typing import BinaryIO, Union

import numpy as np

from .grid import Axis, Grid, GridFunction

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def to_bytes(F: GridFunction) -> bytes:
    d = F.dim
    head = struct.pack("<I", d)
    head += struct.pack(f"<{d}I", *[a.n for a in F.axes])
    head += struct.pack(f"<{d}d", *[a.half_width for a in F.axes])
    head += "".join(a.tag for a in F.axes).encode("ascii")
    body = np.ascontiguousarray(F.samples, dtype="<c8").tobytes(order="C")
    return head + body


def from_bytes(buf: bytes) -> GridFunction:
    if len(buf) < 4:
        raise FormatError("truncated header")
    (d,) = struct.unpack_from("<I", buf, 0)
    if d == 0 or d > 16:
        raise FormatError(f"implausible dimension {d}")
    off = 4
    need = off + 4 * d + 8 * d + d
    if len(buf) < need:
        raise FormatError("truncated header")
    ns = struct.unpack_from(f"<{d}I", buf, off)
    off += 4 * d
    Ls = struct.unpack_from(f"<{d}d", buf, off)
    off += 8 * d
    tags = buf[off:off + d].decode("ascii", errors="replace")
    off += d
    try:
        grid = Grid(tuple(Axis(int(n), float(L), t) for n, L, t in zip(ns, Ls, tags)))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    count = int(np.prod(ns))
    if len(buf) - off != 8 * count:
        raise FormatError(f"expected {8 * count} sample bytes, found {len(buf) - off}")
    data = np.frombuffer(buf, dtype="<c8", count=count, offset=off).reshape(grid.shape)
    return GridFunction(grid, data.astype(complex))


def save(F: GridFunction, path: PathLike):
    Path(path).write_bytes(to_bytes(F))


def load(path: PathLike) -> GridFunction:
    return from_bytes(Path(path).read_bytes())


def write_csv(F: GridFunction, out: Union[PathLike, io.TextIOBase]):
    """One row per sample: coordinates, real part, imaginary part."""
    names = [f"{'x' if a.tag == 's' else 'xi'}{j + 1}" for j, a in enumerate(F.axes)]
    coords = np.meshgrid(*F.grid.coords(), indexing="ij")
    flat = [c.ravel() for c in coords]
    vals = np.asarray(F.samples).ravel()
    own = not hasattr(out, "write")
    fh = open(out, "w", newline="") if own else out
    try:
        w = csv.writer(fh)
        w.writerow(names + ["re", "im"])
        for i in range(vals.size):
            w.writerow([repr(float(c[i])) for c in flat] + [repr(float(vals[i].real)), repr(float(vals[i].imag))])
    finally:
        if own:
            fh.close()
