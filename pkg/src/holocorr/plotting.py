"""PNG figures for rasters and tilings (matplotlib, headless)."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .loci import Polyline, Raster  # noqa: E402
from .ppm import gray_levels  # noqa: E402

_METADATA = {"Software": None}


def raster_figure(raster: Raster, title: str | None = None):
    w = raster.window
    fig, ax = plt.subplots(figsize=(6, 6 * raster.height / max(raster.width, 1)), dpi=100)
    ax.imshow(gray_levels(raster), cmap="gray", vmin=0, vmax=255, origin="upper",
              extent=(w.xmin, w.xmax, w.ymin, w.ymax), interpolation="nearest")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_raster_png(raster: Raster, path, title: str | None = None) -> Path:
    fig = raster_figure(raster, title)
    try:
        fig.savefig(path, metadata=_METADATA)
    finally:
        plt.close(fig)
    return Path(path)


def tiling_figure(lines: Iterable[Polyline], title: str | None = None, limit: float = 6.0):
    fig, ax = plt.subplots(figsize=(6, 6), dpi=100)
    for line in lines:
        pts = line.points
        style = "-" if line.arc == "J" else "--"
        alpha = 1.0 / (1 + len(line.word))
        ax.plot(pts.real, pts.imag, style, lw=0.8, color="k", alpha=max(alpha, 0.15))
    ax.plot([1.0], [0.0], "o", color="tab:red", ms=3)
    ax.set_xlim(-limit, limit)
    ax.set_ylim(-limit, limit)
    ax.set_aspect("equal")
    ax.set_xlabel("Re Z")
    ax.set_ylabel("Im Z")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_tiling_png(lines: Iterable[Polyline], path, title: str | None = None,
                    limit: float = 6.0) -> Path:
    fig = tiling_figure(list(lines), title, limit)
    try:
        fig.savefig(path, metadata=_METADATA)
    finally:
        plt.close(fig)
    return Path(path)
