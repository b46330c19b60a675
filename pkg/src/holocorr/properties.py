"""Randomised cross-module invariant checks, seeded and deterministic."""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from .corr import (corr_images, estimate_fixed_branch_coeff, fixed_branch_multiplier,
                   fixed_branch_quadratic_coeff, involution_J, minkowski_q, relation_residual,
                   zigzag_defect)
from .cycles import branch_fixed_points, quartic_residual
from .errors import BranchTrackingLost, HolocorrError
from .fatou import FatouChart, abel_defect, check_h_conjugacy
from .loci import mgamma_escape
from .lunes import LuneConfig, in_doubly_truncated_lune, in_param_lune, in_truncated_lune


@dataclass(frozen=True)
class PropertyResult:
    name: str
    samples: int
    worst: float
    tolerance: float
    discarded: int = 0

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def as_record(self) -> dict:
        rec = asdict(self)
        rec["pass"] = self.passed
        return rec


def _excluded(a: complex) -> bool:
    return min(abs(a - 1), abs(a - 2), abs(a + 1)) < 1e-3


def random_param(rng: random.Random) -> complex:
    """A parameter in the disc |a - 4| < 3, away from the excluded values."""
    while True:
        a = 4 + cmath.rect(3 * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi))
        if not _excluded(a):
            return a


def random_lune_param(rng: random.Random, cfg: LuneConfig = LuneConfig()) -> complex:
    """Rejection sample from the doubly truncated lune."""
    while True:
        a = complex(rng.uniform(1, 7), rng.uniform(-3, 3))
        if in_doubly_truncated_lune(a, cfg):
            return a


def random_point(rng: random.Random, radius: float = 3.0) -> complex:
    return complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))


def random_rational(rng: random.Random, max_den: int = 10_000) -> Fraction:
    q = rng.randint(1, max_den)
    return Fraction(rng.randint(0, q), q)


def petal_points(chart: FatouChart, n: int, rng: random.Random) -> list[complex]:
    """Points whose chart coordinate ``u`` lies well inside the drift half-plane."""
    thr = chart.drift_threshold
    return [chart.from_u(complex(rng.uniform(thr + 1, thr + 20), rng.uniform(-10, 10)))
            for _ in range(n)]


def check_involution(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        a, Z = random_param(rng), random_point(rng, 5)
        if abs(2 * Z - (1 + a)) < 1e-6:
            continue
        worst = max(worst, abs(involution_J(involution_J(Z, a), a) - Z) / (1 + abs(Z)))
    return PropertyResult("involution", n, worst, 1e-10)


def check_relation(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        a, z = random_param(rng), random_point(rng, 2)
        for w in corr_images(z, a):
            worst = max(worst, relation_residual(z, w, a))
    return PropertyResult("relation_residual", n, worst, 1e-9)


def check_zigzag(n: int, rng: random.Random) -> PropertyResult:
    worst, done, dropped = 0.0, 0, 0
    while done < n:
        a, z = random_param(rng), random_point(rng, 2)
        try:
            worst = max(worst, zigzag_defect(z, a))
            done += 1
        except (BranchTrackingLost, ZeroDivisionError):
            dropped += 1
    return PropertyResult("zigzag", n, worst, 1e-9, dropped)


def check_parabolic(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        a = random_lune_param(rng)
        worst = max(worst, abs(fixed_branch_multiplier(a) - 1))
    return PropertyResult("parabolic_multiplier", n, worst, 1e-10)


def check_quadratic_coeff(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        a = random_lune_param(rng)
        est = estimate_fixed_branch_coeff(a)
        worst = max(worst, abs(est - fixed_branch_quadratic_coeff(a)))
    return PropertyResult("quadratic_coefficient", n, worst, 1e-5)


def check_minkowski(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        x = random_rational(rng)
        qx = minkowski_q(x)
        worst = max(worst, abs(minkowski_q(x / (1 + x)) - qx / 2),
                    abs(minkowski_q(1 - x) - (1 - qx)))
    return PropertyResult("minkowski", n, worst, 1e-12)


def check_lune_nesting(n: int, rng: random.Random) -> PropertyResult:
    cfg = LuneConfig()
    bad = 0
    for _ in range(n):
        a = complex(rng.uniform(0, 8), rng.uniform(-4, 4))
        if _excluded(a) or a == 7:
            continue
        if in_truncated_lune(a, cfg) and not in_param_lune(a, cfg):
            bad += 1
        if in_doubly_truncated_lune(a, cfg) and not in_truncated_lune(a, cfg):
            bad += 1
        for test in (in_param_lune, in_truncated_lune, in_doubly_truncated_lune):
            if test(a, cfg) != test(a.conjugate(), cfg):
                bad += 1
    return PropertyResult("lune_nesting", n, float(bad), 0.0)


def check_conjugation(n: int, rng: random.Random) -> PropertyResult:
    bad = 0
    for _ in range(n):
        a = random_param(rng)
        o1, o2 = mgamma_escape(a, max_iter=500), mgamma_escape(a.conjugate(), max_iter=500)
        if (o1.status, o1.iterations) != (o2.status, o2.iterations):
            bad += 1
    return PropertyResult("mgamma_conjugation", n, float(bad), 0.0)


def check_fixed_points(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    for _ in range(n):
        a = random_param(rng)
        for Z, _ in branch_fixed_points(a):
            worst = max(worst, float(quartic_residual(a, Z)))
    return PropertyResult("fixed_point_residual", n, worst, 1e-10)


def check_abel(n: int, rng: random.Random) -> PropertyResult:
    worst = 0.0
    charts = (FatouChart("PA", A=4), FatouChart("Q14"), FatouChart("H"))
    for chart in charts:
        for z in petal_points(chart, n, rng):
            worst = max(worst, abel_defect(chart, z))
    return PropertyResult("abel_equation", n * len(charts), worst, 1e-8)


def check_h(n: int, rng: random.Random) -> PropertyResult:
    return PropertyResult("h_conjugacy", n, check_h_conjugacy(max(n, 10), rng.randrange(2**31)), 1e-10)


SUITE: dict[str, Callable[[int, random.Random], PropertyResult]] = {
    "involution": check_involution,
    "relation_residual": check_relation,
    "zigzag": check_zigzag,
    "parabolic_multiplier": check_parabolic,
    "quadratic_coefficient": check_quadratic_coeff,
    "minkowski": check_minkowski,
    "lune_nesting": check_lune_nesting,
    "mgamma_conjugation": check_conjugation,
    "fixed_point_residual": check_fixed_points,
    "abel_equation": check_abel,
    "h_conjugacy": check_h,
}


def run_suite(samples: int, seed: int, names: list[str] | None = None) -> list[PropertyResult]:
    """Run the named checks (all by default), each with its own seeded stream."""
    out = []
    for name in names or list(SUITE):
        rng = random.Random(f"{seed}:{name}")
        try:
            out.append(SUITE[name](samples, rng))
        except HolocorrError as exc:
            out.append(PropertyResult(f"{name} ({type(exc).__name__})", samples, math.inf, 0.0))
    return out
