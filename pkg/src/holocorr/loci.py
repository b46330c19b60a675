"""Escape-time engines and rasters for M_Gamma, M_1, the Mandelbrot set,
limit sets of F_a and filled Julia sets of P_A, plus the regular-set tiling.

Pixel centres are computed as ``mid + (2*i + 1 - n) * span / (2*n)``, which
equals ``min + (i + 0.5) * span / n`` but is exactly antisymmetric about the
window midpoint, so conjugation-symmetric windows give bit-exact mirror
images. Row 0 is the top row (largest imaginary part).
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .corr import ParamA, as_complex_a, cov_images, involution_J, stable_quadratic_roots
from .errors import DomainError, InvalidParam
from .lunes import LuneConfig

# None selects the invariant petal radius 2 + 2/|A|**2
DEFAULT_PETAL_THRESHOLD = None
MAX_TILE_DEPTH = 12


class Status(enum.IntEnum):
    ESCAPED = K.ESCAPED
    BOUNDED = K.BOUNDED


class LocusKind(str, enum.Enum):
    MGAMMA = "mgamma"
    M1 = "m1"
    M = "mandelbrot"


@dataclass(frozen=True)
class EscapeOutcome:
    status: Status
    iterations: int
    last_point: complex

    @property
    def bounded(self) -> bool:
        return self.status is Status.BOUNDED


def _outcome(raw) -> EscapeOutcome:
    s, n, x, y = raw
    return EscapeOutcome(Status(s), int(n), complex(x, y))


@dataclass(frozen=True)
class Window:
    xmin: float
    xmax: float
    ymin: float
    ymax: float

    def __post_init__(self):
        vals = (self.xmin, self.xmax, self.ymin, self.ymax)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("window bounds must be finite")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DomainError("window must have xmin < xmax and ymin < ymax")

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise DomainError("window needs xmin,xmax,ymin,ymax")
        return cls(*parts)

    def columns(self, width: int) -> np.ndarray:
        return _centres(self.xmin, self.xmax, width)

    def rows(self, height: int) -> np.ndarray:
        # top row first
        return _centres(self.ymin, self.ymax, height)[::-1].copy()


def _centres(lo: float, hi: float, n: int) -> np.ndarray:
    mid = (lo + hi) / 2
    span = hi - lo
    k = np.arange(n, dtype=np.float64)
    return mid + (2 * k + 1 - n) * span / (2 * n)


@dataclass
class Raster:
    """Per-pixel escape data; arrays are indexed ``[row, column]``."""

    width: int
    height: int
    window: Window
    max_iter: int
    status: np.ndarray
    iterations: np.ndarray
    last_re: np.ndarray
    last_im: np.ndarray

    def outcome(self, row: int, col: int) -> EscapeOutcome:
        return EscapeOutcome(Status(int(self.status[row, col])), int(self.iterations[row, col]),
                             complex(self.last_re[row, col], self.last_im[row, col]))

    @property
    def cells(self) -> list[EscapeOutcome]:
        return [self.outcome(r, c) for r in range(self.height) for c in range(self.width)]

    def centre(self, row: int, col: int) -> complex:
        return complex(self.window.columns(self.width)[col], self.window.rows(self.height)[row])

    def pixel_of(self, z: complex) -> tuple[int, int]:
        """Row and column of the pixel containing ``z``."""
        w = self.window
        col = int((z.real - w.xmin) / (w.xmax - w.xmin) * self.width)
        row = int((w.ymax - z.imag) / (w.ymax - w.ymin) * self.height)
        if not (0 <= col < self.width and 0 <= row < self.height):
            raise DomainError(f"{z!r} lies outside the window")
        return row, col

    @property
    def interior_count(self) -> int:
        return int(np.count_nonzero(self.status == Status.BOUNDED))


def thread_count(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get("HOLOCORR_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def _render(kernel_name: str, args: tuple, window: Window, width: int, height: int,
            max_iter: int, threads: int | None, negate: bool = False) -> Raster:
    if width <= 0 or height <= 0:
        raise DomainError("raster dimensions must be positive")
    if max_iter < 0:
        raise DomainError("max_iter must be non-negative")
    xs, ys = window.columns(width), window.rows(height)
    if negate:
        xs, ys = -xs, -ys
    out_s = np.zeros((height, width), dtype=np.int8)
    out_n = np.zeros((height, width), dtype=np.int64)
    out_x = np.zeros((height, width), dtype=np.float64)
    out_y = np.zeros((height, width), dtype=np.float64)
    fn = K.compiled()[kernel_name]

    def work(r0, r1):
        fn(xs, ys, *args, out_s, out_n, out_x, out_y, r0, r1)

    nthreads = min(thread_count(threads), height)
    if nthreads == 1:
        work(0, height)
    else:
        bounds = np.linspace(0, height, 4 * nthreads + 1).astype(int)
        with ThreadPoolExecutor(nthreads) as pool:
            list(pool.map(work, bounds[:-1], bounds[1:]))
    return Raster(width, height, window, max_iter, out_s, out_n, out_x, out_y)


def _threshold(petal_threshold) -> float:
    if petal_threshold is None:
        return 0.0
    if not petal_threshold > 0:
        raise DomainError("petal_threshold must be positive")
    return float(petal_threshold)


def _angles(cfg: LuneConfig) -> tuple[float, float, float, float]:
    return (math.cos(cfg.theta), math.sin(cfg.theta),
            math.cos(cfg.theta_hat), math.sin(cfg.theta_hat))


# --- scalar engines ----------------------------------------------------------

def branch_into_lune(z: complex, a, cfg: LuneConfig = LuneConfig()):
    """The image of ``z`` under F_a that lies in the closed sector V_a.

    Returns :attr:`Status.ESCAPED` when neither image does.
    """
    pa = a if isinstance(a, ParamA) else ParamA(a)
    z = complex(z)
    _, _, ch, sh = _angles(cfg)
    found, wr, wi = K._lune_step(z.real, z.imag, pa.a.real, pa.a.imag, ch, sh)
    return complex(wr, wi) if found else Status.ESCAPED


def mgamma_escape(a, cfg: LuneConfig = LuneConfig(), max_iter: int = 1000) -> EscapeOutcome:
    """Escape time of the critical point ``c_a`` under the V_a branch of F_a."""
    pa = a if isinstance(a, ParamA) else ParamA(a)
    return _outcome(K.mgamma_point(pa.a.real, pa.a.imag, int(max_iter), *_angles(cfg)))


def in_mgamma(a, cfg: LuneConfig = LuneConfig(), max_iter: int = 1000) -> bool:
    return mgamma_escape(a, cfg, max_iter).bounded


def entry_time(a, cfg: LuneConfig = LuneConfig(), max_iter: int = 1000) -> int | None:
    """Step at which the orbit of the critical value ``v_a`` leaves V_a.

    This measures entry into the croissant V_a minus V'_a; ``None`` when the
    orbit stays for ``max_iter`` steps.
    """
    pa = a if isinstance(a, ParamA) else ParamA(a)
    s, n, _, _ = K.entry_point(pa.a.real, pa.a.imag, int(max_iter), *_angles(cfg))
    return None if s == K.BOUNDED else int(n)


def pa_from_b(B: complex, branch: int = 1) -> complex:
    """``A = branch * sqrt(1 - B)`` with the principal root."""
    if branch not in (1, -1):
        raise InvalidParam("branch must be +1 or -1")
    B = complex(B)
    Ar, Ai = K.principal_sqrt_one_minus(B.real, B.imag)
    return complex(branch * Ar, branch * Ai)


def m1_escape(B: complex, max_iter: int = 1000,
              petal_threshold: float | None = DEFAULT_PETAL_THRESHOLD) -> tuple[EscapeOutcome, EscapeOutcome]:
    """Escape outcomes of the critical points ``+1`` and ``-1`` of P_A."""
    thr = _threshold(petal_threshold)
    B = complex(B)
    if B == 1:
        inside = EscapeOutcome(Status.BOUNDED, int(max_iter), 0j)
        return inside, inside
    A = pa_from_b(B)
    return tuple(_outcome(K.pa_orbit(c, 0.0, A.real, A.imag, int(max_iter), thr))
                 for c in (1.0, -1.0))


def in_m1(B: complex, max_iter: int = 1000,
          petal_threshold: float | None = DEFAULT_PETAL_THRESHOLD) -> bool:
    return any(o.bounded for o in m1_escape(B, max_iter, petal_threshold))


def mandelbrot_escape(c: complex, max_iter: int = 1000) -> EscapeOutcome:
    c = complex(c)
    return _outcome(K.mandelbrot_point(c.real, c.imag, int(max_iter)))


def julia_escape(z: complex, A: complex, max_iter: int = 1000,
                 petal_threshold: float | None = DEFAULT_PETAL_THRESHOLD) -> EscapeOutcome:
    z, A = complex(z), complex(A)
    return _outcome(K.julia_point(z.real, z.imag, A.real, A.imag, int(max_iter), _threshold(petal_threshold)))


def limit_escape(z: complex, a, cfg: LuneConfig = LuneConfig(), max_iter: int = 1000) -> EscapeOutcome:
    pa = a if isinstance(a, ParamA) else ParamA(a)
    z = complex(z)
    _, _, ch, sh = _angles(cfg)
    return _outcome(K.limit_point(z.real, z.imag, pa.a.real, pa.a.imag, int(max_iter), ch, sh))


# --- rasters -----------------------------------------------------------------

def render_parameter_locus(kind, window: Window, width: int, height: int, max_iter: int,
                           cfg: LuneConfig = LuneConfig(),
                           petal_threshold: float | None = DEFAULT_PETAL_THRESHOLD,
                           threads: int | None = None) -> Raster:
    kind = LocusKind(kind)
    if kind is LocusKind.MGAMMA:
        return _render("grid_mgamma", (int(max_iter), *_angles(cfg)),
                       window, width, height, max_iter, threads)
    if kind is LocusKind.M1:
        return _render("grid_m1", (int(max_iter), _threshold(petal_threshold)),
                       window, width, height, max_iter, threads)
    return _render("grid_mandelbrot", (int(max_iter),), window, width, height, max_iter, threads)


def render_limit_set(a, window: Window, width: int, height: int, max_iter: int,
                     cfg: LuneConfig = LuneConfig(), side: str = "minus",
                     threads: int | None = None) -> Raster:
    """Raster of Lambda_- (or its mirror Lambda_+ = -Lambda_- with ``side='plus'``)."""
    if side not in ("minus", "plus"):
        raise DomainError("side must be 'minus' or 'plus'")
    pa = a if isinstance(a, ParamA) else ParamA(a)
    _, _, ch, sh = _angles(cfg)
    return _render("grid_limit", (pa.a.real, pa.a.imag, int(max_iter), ch, sh),
                   window, width, height, max_iter, threads, negate=(side == "plus"))


def render_filled_julia(B: complex, window: Window, width: int, height: int, max_iter: int,
                        petal_threshold: float | None = DEFAULT_PETAL_THRESHOLD, branch: int = -1,
                        threads: int | None = None) -> Raster:
    """Raster of K_A for ``A = branch * sqrt(1 - B)``.

    The default ``branch=-1`` gives ``A = -1`` at ``B = 0``, where ``z = 1``
    is a superattracting fixed point.
    """
    A = pa_from_b(B, branch)
    return _render("grid_julia", (A.real, A.imag, int(max_iter), _threshold(petal_threshold)),
                   window, width, height, max_iter, threads)


# --- regular-set tiling --------------------------------------------------------

@dataclass(frozen=True)
class Polyline:
    """A sampled curve in the Z-plane.

    ``word`` lists the branches applied, oldest first: ``f0``/``f1`` for the
    two forward images, ``b0``/``b1`` for the two preimages.
    """

    arc: str
    word: tuple[str, ...]
    points: np.ndarray
    truncated: bool


def fundamental_arcs(a, samples: int, radius: float = 20.0) -> dict[str, np.ndarray]:
    """Boundary arcs of the standard fundamental domain of F_a, all starting at Z = 1.

    The covering domain is bounded by the branch ``x**2 - y**2/3 = 1, x > 0``
    (the preimage of ``(-inf, -2]`` under ``Z**3 - 3Z`` through ``Z = 1``),
    cut off at ``|Z| = radius``. The involution domain is the exterior of the
    circle through 1 and ``a`` tangent to that branch at 1.
    """
    a = as_complex_a(a)
    if samples < 2:
        raise DomainError("need at least 2 samples per arc")
    if (a - 1).real <= 0:
        raise DomainError("the standard domains need Re(a) > 1")
    smax = math.asinh(math.sqrt((radius ** 2 - 1) / 4))
    s = np.linspace(0.0, smax, samples)
    upper = np.cosh(s) + 1j * math.sqrt(3) * np.sinh(s)
    rho = abs(a - 1) ** 2 / (2 * (a - 1).real)
    t = np.linspace(0.0, 2 * math.pi, samples)
    circle = (1 + rho) - rho * np.exp(1j * t)
    circle[0] = circle[-1] = 1.0
    return {"cov+": upper, "cov-": upper.conjugate(), "J": circle}


def _J_or_inf(Z: complex, a: complex) -> complex:
    try:
        return involution_J(Z, a)
    except ZeroDivisionError:
        return complex(math.inf)


def _branch_pairs(points: np.ndarray, a: complex, forward: bool):
    for Z in points:
        Z = complex(Z)
        if forward:
            yield [_J_or_inf(w, a) for w in cov_images(Z)]
        elif math.isinf(Z.real) or math.isinf(Z.imag):
            yield [complex(math.inf)] * 2
        else:
            Zj = _J_or_inf(Z, a)
            if math.isinf(Zj.real):
                yield [Zj, Zj]
            else:
                w1, w2, _ = stable_quadratic_roots(Zj, Zj * Zj - 3)
                yield [w1, w2]


def _track(points: np.ndarray, a: complex, forward: bool):
    """Continue both branches along a polyline by nearest-point matching.

    Merged roots are passed through (either continuation is a valid image);
    a point sent to infinity becomes a NaN gap and flags the curve.
    """
    tracks = [[], []]
    broken = False
    prev = None
    for pair in _branch_pairs(points, a, forward):
        if not all(math.isfinite(w.real) and math.isfinite(w.imag) for w in pair):
            broken = True
            nan = complex(math.nan, math.nan)
            for k in (0, 1):
                tracks[k].append(nan)
            continue
        if prev is not None:
            d_same = abs(pair[0] - prev[0]) + abs(pair[1] - prev[1])
            d_swap = abs(pair[1] - prev[0]) + abs(pair[0] - prev[1])
            if d_swap < d_same:
                pair = [pair[1], pair[0]]
        for k in (0, 1):
            tracks[k].append(pair[k])
        prev = pair
    return [np.array(t, dtype=complex) for t in tracks], broken


def tile_regular_set(a, depth: int, samples_per_arc: int = 200,
                     radius: float = 20.0) -> list[Polyline]:
    """Images and preimages of the fundamental-domain boundary, up to ``depth``.

    Branches are labelled 0 and 1 by the root order at the first point of
    the parent curve and followed continuously along it; a curve that passes
    through a pole of J gets a NaN gap there and ``truncated`` set.
    """
    if not 0 <= depth <= MAX_TILE_DEPTH:
        raise DomainError(f"depth must lie in [0, {MAX_TILE_DEPTH}]")
    pa = a if isinstance(a, ParamA) else ParamA(a)
    base = [Polyline(name, (), pts, False)
            for name, pts in fundamental_arcs(pa, samples_per_arc, radius).items()]
    out = list(base)
    for forward, tag in ((True, "f"), (False, "b")):
        level = base
        for _ in range(depth):
            nxt = []
            for poly in level:
                tracks, broken = _track(poly.points, pa.a, forward)
                for k in (0, 1):
                    nxt.append(Polyline(poly.arc, poly.word + (f"{tag}{k}",), tracks[k],
                                        poly.truncated or broken))
            out.extend(nxt)
            level = nxt
    return out
