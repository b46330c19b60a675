"""Fixed points and cycles of the F_a branch and of P_A, their multipliers,
Newton solvers for superattracting centres, and multiplier matching."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .corr import (ParamA, as_complex_a, cov_derivative, cov_images, involution_J,
                   involution_J_derivative, stable_quadratic_roots, z_to_Z)
from .errors import (BranchPointOnCycle, DomainError, NoConvergence, NotHyperbolic,
                     PeriodMismatch)
from .lunes import LuneConfig

PERIOD_TOL = 1e-10
MAX_PERIOD = 64
CLASS_TOL = 1e-9
CONTINUATION_STEPS = 32


class CycleClass(str, enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    INDIFFERENT = "indifferent"
    SUPERATTRACTING = "superattracting"
    PARABOLIC = "parabolic"


class Family(str, enum.Enum):
    MGAMMA = "mgamma"
    PER11 = "per11"


def classify(multiplier: complex, max_order: int = MAX_PERIOD) -> CycleClass:
    m = abs(multiplier)
    if m < CLASS_TOL:
        return CycleClass.SUPERATTRACTING
    if abs(m - 1) < CLASS_TOL:
        turn = cmath.phase(multiplier) / (2 * math.pi)
        for q in range(1, max_order + 1):
            root = cmath.exp(2j * math.pi * round(turn * q) / q)
            if abs(multiplier - root) < CLASS_TOL:
                return CycleClass.PARABOLIC
    if m < 1 and abs(m - 1) >= CLASS_TOL:
        return CycleClass.ATTRACTING
    if m > 1 and abs(m - 1) >= CLASS_TOL:
        return CycleClass.REPELLING
    return CycleClass.INDIFFERENT


@dataclass(frozen=True)
class CycleData:
    period: int
    points: tuple[complex, ...]
    multiplier: complex
    cls: CycleClass

    def as_record(self, family: str, param: complex) -> dict:
        return {"family": family, "period": self.period, "param": [param.real, param.imag],
                "multiplier": [self.multiplier.real, self.multiplier.imag],
                "class": self.cls.value}


# --- fixed points of the F_a branch -------------------------------------------

def fixed_point_quartic(a) -> list[complex]:
    """Coefficients, highest first, of N**2 + Z N D + Z**2 D**2 - 3 D**2."""
    a = as_complex_a(a)
    s = 1 + a
    return [4, -2 * s, s * s - 4 * a - 12, s * (12 - 2 * a), 4 * a * a - 3 * s * s]


def _polish(coeffs, root: complex, steps: int = 8) -> complex:
    p = np.poly1d(coeffs)
    dp = p.deriv()
    for _ in range(steps):
        d = dp(root)
        if d == 0:
            break
        step = p(root) / d
        root -= step
        if abs(step) <= 1e-17 * (1 + abs(root)):
            break
    return complex(root)


def branch_fixed_points(a, tol: float = 1e-7) -> list[tuple[complex, int]]:
    """Roots of the fixed-point quartic with multiplicities; Z = 1 comes first.

    The factor ``(Z - 1)**2`` divides the quartic for every ``a``; the
    quotient ``4 Z**2 + (6 - 2a) Z + a**2 - 6a - 3`` is solved stably, and
    roots closer than ``tol`` are merged.
    """
    a = as_complex_a(a)
    if abs(a - 1) < 1e-12:
        raise DomainError("a = 1 is excluded")
    coeffs = fixed_point_quartic(a)
    r1, r2, _ = stable_quadratic_roots((6 - 2 * a) / 4, (a * a - 6 * a - 3) / 4)
    roots = [1.0 + 0j, 1.0 + 0j]
    for r in (r1, r2):
        # Newton is ill-conditioned at a multiple root, so polish only simple ones
        if abs(r - 1) > tol and abs(r1 - r2) > tol * (1 + abs(r)):
            r = _polish(coeffs, r)
        roots.append(r)
    merged: list[list] = []
    for r in roots:
        for entry in merged:
            if abs(entry[0] - r) <= tol * (1 + abs(r)):
                entry[1] += 1
                break
        else:
            merged.append([r, 1])
    return [(complex(r), m) for r, m in merged]


def quartic_residual(a, Z: complex) -> float:
    return abs(np.polyval(fixed_point_quartic(a), Z))


# --- multipliers -----------------------------------------------------------------

def branch_step_derivative(Z: complex, Z_next: complex, a) -> complex:
    a = as_complex_a(a)
    Wp = involution_J(Z_next, a)
    if abs(2 * Wp + Z) < 1e-12:
        raise BranchPointOnCycle(f"branch point on the cycle at Z = {Z!r}")
    return cov_derivative(Z, Wp) * involution_J_derivative(Wp, a)


def branch_multiplier(points, a) -> complex:
    """Multiplier of a cycle ``Z_0 -> Z_1 -> ... -> Z_0`` of a branch of F_a.

    Uses ``W'_i = J_a(Z_{i+1})`` and the chain rule through Cov and J_a.
    Raises :class:`BranchPointOnCycle` (multiplier infinite) at a branch point.
    """
    pts = [complex(p) for p in points]
    rho = 1 + 0j
    for i, Z in enumerate(pts):
        rho *= branch_step_derivative(Z, pts[(i + 1) % len(pts)], a)
    return rho


def _branch_step_near(Z: complex, hint: complex, a: complex) -> complex:
    w1, w2 = (involution_J(w, a) for w in cov_images(Z))
    return w1 if abs(w1 - hint) <= abs(w2 - hint) else w2


def _refine_branch_cycle(pts: list[complex], a: complex, steps: int = 50) -> list[complex]:
    """Newton on the period-p return map, following the branch given by ``pts``."""
    p = len(pts)
    for _ in range(steps):
        orbit = [pts[0]]
        for i in range(p):
            orbit.append(_branch_step_near(orbit[-1], pts[(i + 1) % p], a))
        rho = 1 + 0j
        for i in range(p):
            rho *= branch_step_derivative(orbit[i], orbit[i + 1], a)
        g = orbit[p] - orbit[0]
        if rho == 1:
            break
        delta = g / (rho - 1)
        pts = [pts[0] - delta] + orbit[1:p]
        if abs(delta) <= 1e-16 * (1 + abs(pts[0])):
            break
    orbit = [pts[0]]
    for i in range(p - 1):
        orbit.append(_branch_step_near(orbit[-1], pts[i + 1], a))
    return orbit


def _detect_period(orbit: list[complex]) -> int | None:
    last = orbit[-1]
    for p in range(1, min(MAX_PERIOD, len(orbit) - 1) + 1):
        if abs(orbit[-1 - p] - last) < PERIOD_TOL:
            return p
    return None


def _minimal_period(pts: list[complex]) -> int:
    """Smallest d dividing len(pts) with pts[i + d] == pts[i] to 1e-8."""
    p = len(pts)
    for d in range(1, p):
        if p % d == 0 and all(abs(pts[i] - pts[(i + d) % p]) < 1e-8 * (1 + abs(pts[i]))
                              for i in range(p)):
            return d
    return p


def lune_orbit(a, cfg: LuneConfig = LuneConfig(), n: int = 100, start: complex | None = None):
    """The critical orbit (or that of ``start``) under the V_a branch, in z."""
    pa = a if isinstance(a, ParamA) else ParamA(a)
    z = pa.c if start is None else complex(start)
    ch, sh = math.cos(cfg.theta_hat), math.sin(cfg.theta_hat)
    orbit = [z]
    for _ in range(n):
        found, wr, wi = K._lune_step(z.real, z.imag, pa.a.real, pa.a.imag, ch, sh)
        if not found:
            break
        z = complex(wr, wi)
        orbit.append(z)
    return orbit


def attracting_cycle(a, cfg: LuneConfig = LuneConfig(), max_iter: int = 20000) -> CycleData | None:
    """The attracting cycle that captures the critical orbit, if any."""
    pa = a if isinstance(a, ParamA) else ParamA(a)
    if not K._param_ok(pa.a.real, pa.a.imag, math.cos(cfg.theta), math.sin(cfg.theta)):
        return None
    ch, sh = math.cos(cfg.theta_hat), math.sin(cfg.theta_hat)
    z = pa.c
    orbit = [z]
    period = None
    for _ in range(max_iter):
        found, wr, wi = K._lune_step(z.real, z.imag, pa.a.real, pa.a.imag, ch, sh)
        if not found:
            return None
        z = complex(wr, wi)
        orbit.append(z)
        if len(orbit) > MAX_PERIOD + 1:
            orbit.pop(0)
        period = _detect_period(orbit)
        if period is not None:
            break
    if period is None:
        return None
    tail = orbit[-1 - period:-1]
    try:
        Zs = [z_to_Z(w, pa) for w in tail]
        Zs = _refine_branch_cycle(Zs, pa.a)
        d = _minimal_period(Zs)
        if d < period:
            period = d
            Zs = _refine_branch_cycle(Zs[:d], pa.a)
        rho = branch_multiplier(Zs, pa)
    except (ZeroDivisionError, BranchPointOnCycle):
        return None
    cls = classify(rho)
    if cls not in (CycleClass.ATTRACTING, CycleClass.SUPERATTRACTING):
        return None
    return CycleData(period, tuple(Zs), rho, cls)


# --- the P_A family ------------------------------------------------------------------

def pa_map(z: complex, A: complex) -> complex:
    return z + 1 / z + A


def pa_cycle_multiplier(points, A: complex) -> complex:
    rho = 1 + 0j
    for z in points:
        rho *= 1 - 1 / (z * z)
    return rho


def _refine_pa_cycle(z0: complex, A: complex, p: int, steps: int = 50) -> list[complex]:
    for _ in range(steps):
        orbit = [z0]
        for _ in range(p):
            orbit.append(pa_map(orbit[-1], A))
        rho = pa_cycle_multiplier(orbit[:p], A)
        if rho == 1:
            break
        delta = (orbit[p] - z0) / (rho - 1)
        z0 -= delta
        if abs(delta) <= 1e-16 * (1 + abs(z0)):
            break
    orbit = [z0]
    for _ in range(p - 1):
        orbit.append(pa_map(orbit[-1], A))
    return orbit


def pa_attracting_cycle(B: complex, max_iter: int = 20000, branch: int = -1) -> CycleData | None:
    """The attracting cycle of P_A, ``A = branch * sqrt(1 - B)``, found from ``+-1``."""
    from .loci import pa_from_b

    A = pa_from_b(B, branch)
    if A == 0:
        return None
    thr = K.petal_radius(A.real, A.imag)
    for c in (1.0 + 0j, -1.0 + 0j):
        z = c
        orbit = [z]
        period = None
        for _ in range(max_iter):
            if z == 0 or (z / A).real > thr or abs(z) > K.HARD_BAILOUT:
                break
            z = pa_map(z, A)
            orbit.append(z)
            if len(orbit) > MAX_PERIOD + 1:
                orbit.pop(0)
            period = _detect_period(orbit)
            if period is not None:
                break
        if period is None:
            continue
        try:
            pts = _refine_pa_cycle(orbit[-1], A, period)
            d = _minimal_period(pts)
            if d < period:
                period = d
                pts = _refine_pa_cycle(pts[0], A, d)
        except ZeroDivisionError:
            continue
        rho = pa_cycle_multiplier(pts, A)
        cls = classify(rho)
        if cls in (CycleClass.ATTRACTING, CycleClass.SUPERATTRACTING):
            return CycleData(period, tuple(pts), rho, cls)
    return None


# --- superattracting centres ---------------------------------------------------------

def _mgamma_residual(a: complex, period: int, cfg: LuneConfig) -> complex:
    pa = ParamA(a)
    ch, sh = math.cos(cfg.theta_hat), math.sin(cfg.theta_hat)
    z = pa.v
    for _ in range(period - 1):
        _, wr, wi = K._lune_step(z.real, z.imag, a.real, a.imag, ch, sh)
        z = complex(wr, wi)
    return z - pa.c


def _per11_residual(A: complex, period: int) -> complex:
    z = -1 + 0j
    for _ in range(period):
        z = pa_map(z, A)
    return z + 1


def _newton(g, x0: complex, max_steps: int = 100, tol: float = 1e-12) -> complex:
    x = complex(x0)
    for _ in range(max_steps):
        gx = g(x)
        if abs(gx) < tol:
            return x
        h = 1e-6 * (1 + abs(x))
        dg = (g(x + h) - g(x - h)) / (2 * h)
        if dg == 0 or not cmath.isfinite(dg):
            break
        x -= gx / dg
        if not cmath.isfinite(x):
            break
    raise NoConvergence(f"Newton did not converge from seed {x0!r}")


def center_newton(family, period: int, seed: complex, cfg: LuneConfig = LuneConfig(),
                  max_steps: int = 100) -> complex:
    """Parameter near ``seed`` whose critical point has exact period ``period``.

    For M_Gamma the unknown is ``a``; for Per_1(1) Newton runs in ``A`` from
    ``sqrt(1 - seed)`` with the critical point ``-1`` and ``B = 1 - A**2`` is
    returned.
    """
    family = Family(family)
    if period < 1:
        raise DomainError("period must be positive")
    try:
        if family is Family.MGAMMA:
            return _newton(lambda a: _mgamma_residual(a, period, cfg), seed, max_steps)
        A = _newton(lambda A: _per11_residual(A, period), cmath.sqrt(1 - complex(seed)), max_steps)
    except (ZeroDivisionError, ValueError) as exc:
        raise NoConvergence(f"Newton left the parameter domain: {exc}") from exc
    return 1 - A * A


# --- multiplier matching ---------------------------------------------------------------

def _pa_cycle_system(x: np.ndarray, period: int, rho: complex) -> np.ndarray:
    z0, A = complex(x[0]), complex(x[1])
    z, deriv = z0, 1 + 0j
    for _ in range(period):
        deriv *= 1 - 1 / (z * z)
        z = pa_map(z, A)
    return np.array([z - z0, deriv - rho])


def _solve_cycle_system(x: np.ndarray, period: int, rho: complex, steps: int = 40) -> np.ndarray:
    for _ in range(steps):
        f = _pa_cycle_system(x, period, rho)
        if np.max(np.abs(f)) < 1e-13:
            return x
        jac = np.empty((2, 2), dtype=complex)
        for j in range(2):
            h = 1e-7 * (1 + abs(x[j]))
            e = np.zeros(2, dtype=complex)
            e[j] = h
            jac[:, j] = (_pa_cycle_system(x + e, period, rho) - _pa_cycle_system(x - e, period, rho)) / (2 * h)
        x = x - np.linalg.solve(jac, f)
    if np.max(np.abs(_pa_cycle_system(x, period, rho))) < 1e-9:
        return x
    raise NoConvergence("cycle continuation failed")


def _seed_per11_centre(a_centre: complex, cfg: LuneConfig) -> complex:
    """Rough B for an M_Gamma centre: the real Moebius map sending the
    centres of periods 1 and 2 and the cusp a = 7 to their Per_1(1) partners."""
    a2 = center_newton(Family.MGAMMA, 2, 4.37, cfg).real
    pts = [(5.0, 0.0), (7.0, 1.0), (a2, -1.25)]
    # solve B = (p a + q) / (r a + 1)
    M = np.array([[x, 1.0, -x * y] for x, y in pts])
    p, q, r = np.linalg.solve(M, [y for _, y in pts])
    return (p * a_centre + q) / (r * a_centre + 1)


def chi_hat(a, cfg: LuneConfig = LuneConfig(), center_seed: complex | None = None) -> complex:
    """Multiplier-matching map from a hyperbolic component of M_Gamma to M_1.

    Period 1 returns the multiplier itself. For period p >= 2 the multiplier
    is followed along the ray from 0 in 32 steps, starting from the period-p
    centre of Per_1(1) and solving for the cycle point and ``A`` at each step.
    """
    pa = a if isinstance(a, ParamA) else ParamA(a)
    cyc = attracting_cycle(pa, cfg)
    if cyc is None:
        raise NotHyperbolic(f"no attracting cycle found for a = {pa.a!r}")
    if cyc.period == 1:
        return cyc.multiplier
    p, rho = cyc.period, cyc.multiplier
    if center_seed is None:
        a_centre = center_newton(Family.MGAMMA, p, pa.a, cfg)
        center_seed = _seed_per11_centre(a_centre, cfg)
    B_c = center_newton(Family.PER11, p, center_seed)
    A_c = cmath.sqrt(1 - B_c)
    x = np.array([-1 + 0j, A_c])
    for k in range(1, CONTINUATION_STEPS + 1):
        x = _solve_cycle_system(x, p, rho * k / CONTINUATION_STEPS)
    z0, A = complex(x[0]), complex(x[1])
    z = z0
    for k in range(1, p):
        z = pa_map(z, A)
        if abs(z - z0) < 1e-6 * (1 + abs(z0)):
            raise PeriodMismatch(f"continuation landed on period {k}, expected {p}")
    return 1 - A * A
