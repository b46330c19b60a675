"""Numerical Fatou coordinates at parabolic points and the Milnor model
coordinate on the shift locus of Per_1(1).

Each chart works in a coordinate ``u`` in which its map is exactly
``u -> u + 1 + a_hat/u + O(1/u**2)`` near infinity:

* ``PA``:  P_A(z) = z + 1/z + A,     u = z/A,            f(u) = u + 1 + 1/(A**2 u)
* ``Q14``: Q(z) = z**2 + 1/4,       u = 1/(1/2 - z),    f(u) = u + 1 + 1/(u - 1)
* ``H``:   h(z) = (z**2 + 1/3)/(z**2/3 + 1),
           u = x**2/2 with x = (z + 1)/(z - 1),         f(u) = u + 1 + 1/(4u)

The Fatou coordinate is ``lim u_n - n - a_hat log u_n + c1/u_n`` shifted so
that the chart's critical value goes to 1. The coefficients ``a_hat`` and
``c1`` are fitted on the orbit tail of that critical value.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import (DomainError, InversionFailure, NotInPetal, NotInShiftLocus,
                     PoleInput, DegenerateParam, InvalidParam)
from .corr import as_complex_a, fixed_branch_quadratic_coeff

DEFAULT_DEPTH = 2000
MIN_DEPTH = 100
DRIFT_RUN = 10
# Fatou values this close to an integer are treated as on the piece boundary
SNAP_TOL = 1e-9


def prefatou_psi(zeta: complex, a) -> complex:
    """``psi_a(zeta) = -1/(b(a) zeta)``, straightening the parabolic branch at Z = 1."""
    a = as_complex_a(a)
    if abs(a - 1) < 1e-12:
        raise InvalidParam("a = 1 is excluded")
    b = fixed_branch_quadratic_coeff(a)
    if b == 0:
        raise DegenerateParam("b(a) vanishes at a = 7")
    zeta = complex(zeta)
    if zeta == 0:
        raise PoleInput("zeta = 0 is the pole of psi_a")
    return -1 / (b * zeta)


# --- the three model maps -----------------------------------------------------

def p0_map(z: complex) -> complex:
    return z + 1 / z


def h_map(z: complex) -> complex:
    if cmath.isinf(z):
        return 3 + 0j
    z2 = z * z
    return (z2 + 1 / 3) / (z2 / 3 + 1)


def h_conjugator(z: complex) -> complex:
    """``(z + 1)/(z - 1)``, an involution carrying P_0 to h."""
    if cmath.isinf(z):
        return 1 + 0j
    if z == 1:
        return complex(math.inf)
    return (z + 1) / (z - 1)


def q14_map(z: complex) -> complex:
    return z * z + 0.25


@dataclass(frozen=True)
class FatouChart:
    """An attracting Fatou coordinate normalised at a critical value.

    ``map_id`` is ``"PA"`` (with ``A``), ``"Q14"`` or ``"H"``.
    """

    map_id: str
    A: complex | None = None
    iteration_depth: int = DEFAULT_DEPTH
    normalization_point: complex = field(init=False)
    log_coefficient: complex = field(init=False)
    c1: complex = field(init=False, repr=False)
    offset: complex = field(init=False, repr=False)
    residual: float = field(init=False)

    def __post_init__(self):
        if self.map_id not in ("PA", "Q14", "H"):
            raise DomainError(f"unknown chart {self.map_id!r}")
        if self.map_id == "PA":
            if self.A is None or complex(self.A) == 0:
                raise DomainError("the PA chart needs A != 0")
            object.__setattr__(self, "A", complex(self.A))
            norm = self.A - 2
        elif self.map_id == "Q14":
            norm = 0.25 + 0j
        else:
            norm = 3 + 0j
        if self.iteration_depth < MIN_DEPTH:
            raise DomainError(f"depth must be at least {MIN_DEPTH}")
        object.__setattr__(self, "normalization_point", complex(norm))
        orbit, _ = self._petal_orbit(self.to_u(norm), self.iteration_depth)
        ahat, beta = _fit_log_coefficient(orbit[len(orbit) // 2:])
        object.__setattr__(self, "log_coefficient", ahat)
        object.__setattr__(self, "c1", beta - ahat * ahat + ahat / 2)
        object.__setattr__(self, "offset", 0j)
        raw = self._raw(orbit)
        object.__setattr__(self, "offset", 1 - raw)
        defect = abs(self.coordinate(self.map(norm)) - 2)
        object.__setattr__(self, "residual", defect)

    # coordinates
    def to_u(self, z: complex) -> complex:
        z = complex(z)
        if self.map_id == "PA":
            return z / self.A
        if self.map_id == "Q14":
            return 1 / (0.5 - z)
        x = h_conjugator(z)
        return x * x / 2

    def from_u(self, u: complex) -> complex:
        """A point with the given ``u`` (for H the root with ``Re x < 0``)."""
        u = complex(u)
        if self.map_id == "PA":
            return u * self.A
        if self.map_id == "Q14":
            return 0.5 - 1 / u
        x = -cmath.sqrt(2 * u)
        return h_conjugator(x)

    def map(self, z: complex) -> complex:
        if self.map_id == "PA":
            return z + 1 / z + self.A
        if self.map_id == "Q14":
            return q14_map(z)
        return h_map(z)

    def u_map(self, u: complex) -> complex:
        if self.map_id == "PA":
            return u + 1 + 1 / (self.A * self.A * u)
        if self.map_id == "Q14":
            return u + 1 + 1 / (u - 1)
        return u + 1 + 1 / (4 * u)

    @property
    def drift_threshold(self) -> float:
        # Re(u) beyond this keeps the correction term below 1/2
        if self.map_id == "PA":
            return 2 + 2 / abs(self.A) ** 2
        return 3.0 if self.map_id == "Q14" else 2.5

    # orbit machinery
    def entry_step(self, u: complex, limit: int) -> int:
        """First step at which the drift test has held for 10 consecutive steps."""
        thr = self.drift_threshold
        run, prev = 0, u.real
        for n in range(1, limit + 1):
            try:
                u = self.u_map(u)
            except ZeroDivisionError:
                raise NotInPetal("orbit lands on the parabolic point") from None
            run = run + 1 if (u.real > thr and u.real > prev) else 0
            prev = u.real
            if run >= DRIFT_RUN:
                return n
        raise NotInPetal(f"drift test not passed within {limit} steps")

    def _petal_orbit(self, u0: complex, depth: int) -> tuple[list[complex], int]:
        m = self.entry_step(u0, depth)
        orbit = [u0]
        u = u0
        for _ in range(m + depth):
            u = self.u_map(u)
            orbit.append(u)
        return orbit, m

    def _raw(self, orbit: list[complex]) -> complex:
        n = len(orbit) - 1
        u = orbit[-1]
        return u - n - self.log_coefficient * cmath.log(u) + self.c1 / u + self.offset

    def coordinate(self, z: complex, depth: int | None = None) -> complex:
        return self.coordinate_u(self.to_u(z), depth)

    def coordinate_u(self, u: complex, depth: int | None = None) -> complex:
        depth = self.iteration_depth if depth is None else depth
        if depth < MIN_DEPTH:
            raise DomainError(f"depth must be at least {MIN_DEPTH}")
        m = self.entry_step(u, depth)
        n = m + depth
        for _ in range(n):
            u = self.u_map(u)
        return u - n - self.log_coefficient * cmath.log(u) + self.c1 / u + self.offset


def _fit_log_coefficient(tail: list[complex]) -> tuple[complex, complex]:
    """Least-squares fit of ``u_{k+1} - u_k - 1`` by ``a/u + b/u**2 + c/u**3``."""
    u = np.array(tail[:-1], dtype=complex)
    y = np.array(tail[1:], dtype=complex) - u - 1
    M = np.stack([1 / u, 1 / u ** 2, 1 / u ** 3], axis=1)
    coef, *_ = np.linalg.lstsq(M, y, rcond=None)
    return complex(coef[0]), complex(coef[1])


def fatou_coordinate(chart: FatouChart, z: complex, depth: int | None = None) -> complex:
    """The chart's Fatou coordinate at a point of the parabolic basin."""
    return chart.coordinate(z, depth)


def abel_defect(chart: FatouChart, z: complex) -> float:
    return abs(chart.coordinate(chart.map(z)) - chart.coordinate(z) - 1)


def check_h_conjugacy(samples: int, seed: int = 0) -> float:
    """Largest ``|phi(P_0(z)) - h(phi(z))|`` over random ``|z| <= 10`` away from poles."""
    if samples < 10:
        raise DomainError("need at least 10 samples")
    rng = random.Random(seed)
    bad = (0j, 1 + 0j, complex(0, math.sqrt(3)), complex(0, -math.sqrt(3)))
    worst, done = 0.0, 0
    while done < samples:
        z = cmath.rect(10 * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
        if min(abs(z - p) for p in bad[:2]) < 0.05:
            continue
        x = h_conjugator(z)
        pz = p0_map(z)
        if min(abs(x - p) for p in bad[2:]) < 0.05 or abs(pz - 1) < 0.05:
            continue
        worst = max(worst, abs(h_conjugator(pz) - h_map(x)))
        done += 1
    return worst


# --- Milnor model coordinate -------------------------------------------------

@dataclass(frozen=True)
class MilnorPoint:
    B: complex
    A: complex
    entry_index: int
    model_point: complex
    fatou_value: complex

    def as_record(self) -> dict:
        return {"B": [self.B.real, self.B.imag], "A": [self.A.real, self.A.imag],
                "entry_index": self.entry_index,
                "model_point": [self.model_point.real, self.model_point.imag],
                "fatou_value": [self.fatou_value.real, self.fatou_value.imag]}


def _fatou_value(A: complex, depth: int) -> complex:
    chart = FatouChart("PA", A, depth)
    return chart.coordinate(2 + A)


def _invert_q14(chart: FatouChart, t: complex, depth: int, lift: float = 40.0) -> complex:
    """A point ``w`` of the Q_{1/4} basin with ``phi(w) = t``.

    Solves in the petal for ``t + n`` (Re at least ``lift``), then pulls back
    ``n`` times with the root of ``w - 1/4`` having Re >= 0, and polishes.
    """
    n = max(0, math.ceil(lift - t.real))
    target = t + n
    u = target - chart.offset + chart.log_coefficient * cmath.log(target)
    for _ in range(60):
        g = chart.coordinate_u(u, depth) - target
        if abs(g) < 1e-12:
            break
        h = 1e-6 * (1 + abs(u))
        dg = (chart.coordinate_u(u + h, depth) - chart.coordinate_u(u - h, depth)) / (2 * h)
        u -= g / dg
    w = chart.from_u(u)
    for _ in range(n):
        w = cmath.sqrt(w - 0.25)
        if w.real < 0:
            w = -w
    for _ in range(30):
        try:
            g = chart.coordinate(w, depth) - t
        except (NotInPetal, ZeroDivisionError) as exc:
            raise InversionFailure(f"inverse left the basin: {exc}") from exc
        if abs(g) < 1e-10:
            return w
        h = 1e-7 * (1 + abs(w))
        dg = (chart.coordinate(w + h, depth) - chart.coordinate(w - h, depth)) / (2 * h)
        if dg == 0:
            break
        w -= g / dg
    raise InversionFailure(f"Newton on the Q_1/4 coordinate stalled for t = {t!r}")


def milnor_coordinate(B: complex, depth: int = DEFAULT_DEPTH) -> MilnorPoint:
    """Fatou value, entry index and model point of ``B`` in the shift locus.

    ``A`` is taken as ``-sqrt(1 - B)`` unless that puts the Fatou value to
    the right of ``Re = 1``; the two signs give values ``t`` and ``2 - t``,
    and the model lies outside the petal ``Re phi > 1``.
    """
    from .loci import in_m1

    B = complex(B)
    if B == 1 or in_m1(B, max_iter=5000):
        raise NotInShiftLocus(f"B = {B!r} lies in M_1")
    A = -cmath.sqrt(1 - B)
    t = _fatou_value(A, depth)
    if t.real > 1 + SNAP_TOL:
        A = -A
        t = _fatou_value(A, depth)
    r = t.real
    if abs(r - round(r)) < SNAP_TOL:
        r = float(round(r))
    k = max(0, math.ceil(1 - r))
    model = _invert_q14(FatouChart("Q14", iteration_depth=depth), t, depth)
    return MilnorPoint(B, A, k, model, t)
