"""Scalar escape-time kernels in real arithmetic.

Every kernel is written once, as plain Python over floats, and compiled by
numba for raster work when numba is importable. Only IEEE-exact operations
(+, -, *, /, sqrt, comparisons) are used, in a fixed order, so the
interpreted and compiled versions produce bit-identical results and both are
exactly equivariant under complex conjugation.

Status codes: 0 = escaped, 1 = bounded.
"""
import math

try:  # pragma: no cover - exercised implicitly
    from numba import njit as _njit

    def jit(fn):
        return _njit(nogil=True)(fn)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    def jit(fn):
        return fn

    HAVE_NUMBA = False

ESCAPED = 0
BOUNDED = 1
POLE_TOL2 = 1e-24
HARD_BAILOUT = 1e8


def _cdiv(ar, ai, br, bi):
    # Smith's algorithm
    if abs(br) >= abs(bi):
        r = bi / br
        den = br + bi * r
        return (ar + ai * r) / den, (ai - ar * r) / den
    r = br / bi
    den = br * r + bi
    return (ar * r + ai) / den, (ai * r - ar) / den


def _csqrt(x, y):
    if x == 0.0 and y == 0.0:
        return 0.0, y
    scale = 1.0
    if abs(x) < 1e-150 and abs(y) < 1e-150:
        # rescale by 2**600 so x*x + y*y cannot underflow
        x = x * 4.149515568880993e+180
        y = y * 4.149515568880993e+180
        scale = 4.909093465297727e-91
    t = math.sqrt((abs(x) + math.sqrt(x * x + y * y)) * 0.5)
    if x >= 0.0:
        return t * scale, y / (2.0 * t) * scale
    return abs(y) / (2.0 * t) * scale, math.copysign(t, y) * scale


def _in_sector(wr, wi, cos_t, sin_t):
    # |arg w| <= angle, closed, w = 0 included
    return wr * sin_t >= abs(wi) * cos_t


def _to_zprime_neg(wr, wi, ar, ai):
    # -(a - 1) * w
    br = ar - 1.0
    return -(br * wr - ai * wi), -(br * wi + ai * wr)


def _lune_images(zr, zi, ar, ai):
    """Both F_a images of z; flags mark images at infinity (pole)."""
    dr = zr + 1.0
    di = zi
    if dr * dr + di * di < POLE_TOL2:
        # z = -1 is Z = infinity, whose images are z = 1 (twice)
        return 1.0, 0.0, True, 1.0, 0.0, True
    Zr, Zi = _cdiv(ar * zr - ai * zi + 1.0, ar * zi + ai * zr, dr, di)
    Z2r = Zr * Zr - Zi * Zi
    Z2i = 2.0 * Zr * Zi
    sr, si = _csqrt(12.0 - 3.0 * Z2r, -3.0 * Z2i)
    if Zr * sr + Zi * si < 0.0:
        sr = -sr
        si = -si
    qr = -(Zr + sr) * 0.5
    qi = -(Zi + si) * 0.5
    if qr == 0.0 and qi == 0.0:
        W2r, W2i = 0.0, 0.0
    else:
        W2r, W2i = _cdiv(Z2r - 3.0, Z2i, qr, qi)
    # back to z, then the involution z -> -z
    ok1 = True
    ok2 = True
    er, ei = ar - qr, ai - qi
    if er * er + ei * ei < POLE_TOL2:
        ok1 = False
        w1r, w1i = 0.0, 0.0
    else:
        w1r, w1i = _cdiv(qr - 1.0, qi, er, ei)
        w1r, w1i = -w1r, -w1i
    er, ei = ar - W2r, ai - W2i
    if er * er + ei * ei < POLE_TOL2:
        ok2 = False
        w2r, w2i = 0.0, 0.0
    else:
        w2r, w2i = _cdiv(W2r - 1.0, W2i, er, ei)
        w2r, w2i = -w2r, -w2i
    return w1r, w1i, ok1, w2r, w2i, ok2


def _lune_step(zr, zi, ar, ai, cos_h, sin_h):
    """Image of z inside the closed sector V_a; found=False if none is."""
    w1r, w1i, ok1, w2r, w2i, ok2 = _lune_images(zr, zi, ar, ai)
    in1 = False
    in2 = False
    u1r, u1i = _to_zprime_neg(w1r, w1i, ar, ai)
    u2r, u2i = _to_zprime_neg(w2r, w2i, ar, ai)
    if ok1:
        in1 = _in_sector(u1r, u1i, cos_h, sin_h)
    if ok2:
        in2 = _in_sector(u2r, u2i, cos_h, sin_h)
    if in1 and in2:
        # both inside: smaller |arg|, then smaller modulus, then (re, im)
        lhs = abs(u1i) * u2r
        rhs = abs(u2i) * u1r
        if lhs < rhs:
            return True, w1r, w1i
        if rhs < lhs:
            return True, w2r, w2i
        m1 = u1r * u1r + u1i * u1i
        m2 = u2r * u2r + u2i * u2i
        if m1 < m2:
            return True, w1r, w1i
        if m2 < m1:
            return True, w2r, w2i
        if w2r < w1r or (w2r == w1r and w2i < w1i):
            return True, w2r, w2i
        return True, w1r, w1i
    if in1:
        return True, w1r, w1i
    if in2:
        return True, w2r, w2i
    if ok1:
        return False, w1r, w1i
    if ok2:
        return False, w2r, w2i
    return False, math.inf, 0.0


def _lune_orbit(zr, zi, ar, ai, cos_h, sin_h, max_iter):
    """Escape time of z under the V_a branch: first n with z_n outside V_a."""
    n = 0
    while n < max_iter:
        ur, ui = _to_zprime_neg(zr, zi, ar, ai)
        if not _in_sector(ur, ui, cos_h, sin_h):
            return ESCAPED, n, zr, zi
        found, zr, zi = _lune_step(zr, zi, ar, ai, cos_h, sin_h)
        if not found:
            return ESCAPED, n + 1, zr, zi
        n += 1
    return BOUNDED, max_iter, zr, zi


def _param_ok(ar, ai, cos_t, sin_t):
    """Valid parameter (not 1, 2, -1) inside L_theta, or exactly 7."""
    for bad in (1.0, 2.0, -1.0):
        dr = ar - bad
        if dr * dr + ai * ai < POLE_TOL2:
            return False
    if ar == 7.0 and ai == 0.0:
        return True
    qr, qi = _cdiv(ar - 1.0, ai, 7.0 - ar, -ai)
    return qr * sin_t > abs(qi) * cos_t


def mgamma_point(ar, ai, max_iter, cos_t, sin_t, cos_h, sin_h):
    if not _param_ok(ar, ai, cos_t, sin_t):
        return ESCAPED, 0, ar, ai
    cr, ci = _cdiv(-2.0, 0.0, ar + 1.0, ai)
    return _lune_orbit(cr, ci, ar, ai, cos_h, sin_h, max_iter)


def entry_point(ar, ai, max_iter, cos_t, sin_t, cos_h, sin_h):
    if not _param_ok(ar, ai, cos_t, sin_t):
        return ESCAPED, 0, ar, ai
    vr, vi = _cdiv(-1.0, 0.0, ar - 2.0, ai)
    return _lune_orbit(vr, vi, ar, ai, cos_h, sin_h, max_iter)


def limit_point(zr, zi, ar, ai, max_iter, cos_h, sin_h):
    return _lune_orbit(zr, zi, ar, ai, cos_h, sin_h, max_iter)


def _pa_escaped(zr, zi, Ar, Ai, threshold):
    if zr * zr + zi * zi > HARD_BAILOUT * HARD_BAILOUT:
        return True
    ur, _ = _cdiv(zr, zi, Ar, Ai)
    return ur > threshold


def petal_radius(Ar, Ai):
    """R with {Re(z/A) > R} forward invariant and attracted to infinity.

    In u = z/A the map is u -> u + 1 + 1/(A**2 u); once |u| > 2/|A|**2 the
    correction is below 1/2, so Re(u) grows by at least 1/2 per step.
    """
    m2 = Ar * Ar + Ai * Ai
    if m2 == 0.0:
        return math.inf
    return 2.0 + 2.0 / m2


def pa_orbit(zr, zi, Ar, Ai, max_iter, threshold):
    """Escape time of z under P_A(z) = z + 1/z + A toward the parabolic point.

    A non-positive threshold selects the invariant petal radius.
    """
    if threshold <= 0.0:
        threshold = petal_radius(Ar, Ai)
    n = 0
    while n < max_iter:
        if _pa_escaped(zr, zi, Ar, Ai, threshold):
            return ESCAPED, n, zr, zi
        m2 = zr * zr + zi * zi
        if m2 < POLE_TOL2:
            # z = 0 lands on the parabolic point itself and stays there
            return BOUNDED, max_iter, math.inf, 0.0
        zr, zi = zr + zr / m2 + Ar, zi - zi / m2 + Ai
        n += 1
    return BOUNDED, max_iter, zr, zi


def principal_sqrt_one_minus(Br, Bi):
    return _csqrt(1.0 - Br, -Bi)


def julia_point(zr, zi, Ar, Ai, max_iter, threshold):
    if Ar == 0.0 and Ai == 0.0:
        # K_0 is the open left half-plane by convention
        if zr < 0.0:
            return BOUNDED, max_iter, zr, zi
        return ESCAPED, 0, zr, zi
    return pa_orbit(zr, zi, Ar, Ai, max_iter, threshold)


def m1_point(Br, Bi, max_iter, threshold):
    if Br == 1.0 and Bi == 0.0:
        return BOUNDED, max_iter, 0.0, 0.0
    Ar, Ai = principal_sqrt_one_minus(Br, Bi)
    s1, n1, x1, y1 = pa_orbit(1.0, 0.0, Ar, Ai, max_iter, threshold)
    s2, n2, x2, y2 = pa_orbit(-1.0, 0.0, Ar, Ai, max_iter, threshold)
    if s1 == BOUNDED:
        return BOUNDED, max_iter, x1, y1
    if s2 == BOUNDED:
        return BOUNDED, max_iter, x2, y2
    if n2 > n1:
        return ESCAPED, n2, x2, y2
    return ESCAPED, n1, x1, y1


def mandelbrot_point(cr, ci, max_iter):
    zr = 0.0
    zi = 0.0
    n = 0
    while n < max_iter:
        if zr * zr + zi * zi > 4.0:
            return ESCAPED, n, zr, zi
        zr, zi = zr * zr - zi * zi + cr, 2.0 * zr * zi + ci
        n += 1
    return BOUNDED, max_iter, zr, zi


# --- compiled versions and row drivers -------------------------------------

def grid_mgamma(xs, ys, max_iter, ct, st, ch, sh, out_s, out_n, out_x, out_y, r0, r1):
    for j in range(r0, r1):
        for i in range(xs.shape[0]):
            s, n, x, y = mgamma_point(xs[i], ys[j], max_iter, ct, st, ch, sh)
            out_s[j, i] = s
            out_n[j, i] = n
            out_x[j, i] = x
            out_y[j, i] = y


def grid_limit(xs, ys, ar, ai, max_iter, ch, sh, out_s, out_n, out_x, out_y, r0, r1):
    for j in range(r0, r1):
        for i in range(xs.shape[0]):
            s, n, x, y = limit_point(xs[i], ys[j], ar, ai, max_iter, ch, sh)
            out_s[j, i] = s
            out_n[j, i] = n
            out_x[j, i] = x
            out_y[j, i] = y


def grid_julia(xs, ys, Ar, Ai, max_iter, thr, out_s, out_n, out_x, out_y, r0, r1):
    for j in range(r0, r1):
        for i in range(xs.shape[0]):
            s, n, x, y = julia_point(xs[i], ys[j], Ar, Ai, max_iter, thr)
            out_s[j, i] = s
            out_n[j, i] = n
            out_x[j, i] = x
            out_y[j, i] = y


def grid_m1(xs, ys, max_iter, thr, out_s, out_n, out_x, out_y, r0, r1):
    for j in range(r0, r1):
        for i in range(xs.shape[0]):
            s, n, x, y = m1_point(xs[i], ys[j], max_iter, thr)
            out_s[j, i] = s
            out_n[j, i] = n
            out_x[j, i] = x
            out_y[j, i] = y


def grid_mandelbrot(xs, ys, max_iter, out_s, out_n, out_x, out_y, r0, r1):
    for j in range(r0, r1):
        for i in range(xs.shape[0]):
            s, n, x, y = mandelbrot_point(xs[i], ys[j], max_iter)
            out_s[j, i] = s
            out_n[j, i] = n
            out_x[j, i] = x
            out_y[j, i] = y


def _build_jitted():
    """Compile the kernel graph once; each function sees compiled callees."""
    import types

    g = {}
    src_funcs = [_cdiv, _csqrt, _in_sector, _to_zprime_neg, _lune_images,
                 _lune_step, _lune_orbit, _param_ok, mgamma_point, entry_point,
                 limit_point, _pa_escaped, pa_orbit, principal_sqrt_one_minus,
                 julia_point, m1_point, mandelbrot_point, petal_radius, grid_mgamma,
                 grid_limit, grid_julia, grid_m1, grid_mandelbrot]
    ns = {"math": math, "ESCAPED": ESCAPED, "BOUNDED": BOUNDED,
          "POLE_TOL2": POLE_TOL2, "HARD_BAILOUT": HARD_BAILOUT}
    for fn in src_funcs:
        clone = types.FunctionType(fn.__code__, ns, fn.__name__, fn.__defaults__)
        ns[fn.__name__] = jit(clone)
        g[fn.__name__] = ns[fn.__name__]
    return g


_JITTED = None


def compiled():
    global _JITTED
    if _JITTED is None:
        _JITTED = _build_jitted()
    return _JITTED
