"""Raster serialization: binary PPM and CSV dumps."""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .loci import Raster, Status

CSV_HEADER = "x,y,re,im,status,iterations"


def gray_levels(raster: Raster) -> np.ndarray:
    """``floor(255 * min(it, max_iter) / max_iter)`` per pixel, interior pixels 0."""
    if raster.max_iter <= 0:
        return np.zeros((raster.height, raster.width), dtype=np.uint8)
    it = np.minimum(raster.iterations, raster.max_iter)
    vals = (255 * it) // raster.max_iter
    vals[raster.status == Status.BOUNDED] = 0
    return vals.astype(np.uint8)


def ppm_bytes(raster: Raster) -> bytes:
    g = gray_levels(raster)
    header = f"P6\n{raster.width} {raster.height}\n255\n".encode("ascii")
    return header + np.repeat(g[:, :, None], 3, axis=2).tobytes()


def write_ppm(raster: Raster, path) -> None:
    Path(path).write_bytes(ppm_bytes(raster))


def read_ppm(path) -> np.ndarray:
    """Read a P6 file written by :func:`write_ppm`; returns ``(h, w, 3)`` uint8."""
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError("only maxval 255 is supported")
    pixels = np.frombuffer(parts[4][: w * h * 3], dtype=np.uint8)
    return pixels.reshape(h, w, 3)


def csv_text(raster: Raster) -> str:
    xs = raster.window.columns(raster.width)
    ys = raster.window.rows(raster.height)
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in range(raster.height):
        for c in range(raster.width):
            status = "bounded" if raster.status[r, c] == Status.BOUNDED else "escaped"
            buf.write(f"{c},{r},{xs[c]:.17g},{ys[r]:.17g},{status},{int(raster.iterations[r, c])}\n")
    return buf.getvalue()


def write_csv(raster: Raster, path) -> None:
    Path(path).write_text(csv_text(raster), encoding="utf-8")
