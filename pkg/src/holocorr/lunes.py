"""Parameter lunes, the dynamical lune V_a, and sampled containment checks."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .corr import AParam, as_complex_a, cov_images, involution_J
from .errors import DomainError, InvalidParam

DEFAULT_THETA = math.pi / 3
DEFAULT_THETA_HAT = 0.45 * math.pi
DEFAULT_U7_RADIUS = 0.05


@dataclass(frozen=True)
class LuneConfig:
    theta: float = DEFAULT_THETA
    theta_hat: float = DEFAULT_THETA_HAT
    u7_radius: float = DEFAULT_U7_RADIUS

    def __post_init__(self):
        if not (math.pi / 3 <= self.theta < self.theta_hat < math.pi / 2):
            raise InvalidParam(
                f"need pi/3 <= theta < theta_hat < pi/2, got theta={self.theta}, "
                f"theta_hat={self.theta_hat}")
        if not self.u7_radius > 0:
            raise InvalidParam("u7_radius must be positive")


def within_angle(w: complex, angle: float, closed: bool = False) -> bool:
    """``|arg w| < angle`` (``<=`` when closed) for ``0 < angle < pi``.

    Decided by ``Re(w) sin(angle)`` against ``|Im(w)| cos(angle)``, which is
    exactly symmetric under conjugation. ``w = 0`` counts as inside only when
    ``closed``.
    """
    lhs = w.real * math.sin(angle)
    rhs = abs(w.imag) * math.cos(angle)
    return lhs >= rhs if closed else lhs > rhs


def in_param_lune(a: complex, cfg: LuneConfig = LuneConfig()) -> bool:
    """Membership of ``a`` in L_theta = {|arg((a-1)/(7-a))| < theta}."""
    a = complex(a)
    if a == 1 or a == 7:
        raise InvalidParam("the lune test needs a != 1, 7")
    return within_angle((a - 1) / (7 - a), cfg.theta)


def in_truncated_lune(a: complex, cfg: LuneConfig = LuneConfig()) -> bool:
    """Membership in L'_theta: in L_theta, and ``|arg((a-1)/(a-2))| < theta_hat``."""
    a = complex(a)
    if a == 2:
        raise InvalidParam("the truncated-lune test needs a != 2")
    return in_param_lune(a, cfg) and within_angle((a - 1) / (a - 2), cfg.theta_hat)


def in_doubly_truncated_lune(a: complex, cfg: LuneConfig = LuneConfig()) -> bool:
    """Membership in K = closure(L'_theta) minus the disc U(7)."""
    a = complex(a)
    if a == 1 or a == 2:
        raise InvalidParam("the K test needs a != 1, 2")
    if abs(a - 7) <= cfg.u7_radius:
        return False
    return (within_angle((a - 1) / (7 - a), cfg.theta, closed=True)
            and within_angle((a - 1) / (a - 2), cfg.theta_hat, closed=True))


def in_dynamical_lune(z: complex, a: AParam, cfg: LuneConfig = LuneConfig(),
                      closed: bool = True) -> bool:
    """Whether ``z`` lies in the sector V_a, i.e. ``|arg(-(a-1) z)| < theta_hat``."""
    a = as_complex_a(a)
    return within_angle(-(a - 1) * complex(z), cfg.theta_hat, closed=closed)


# --- containment checks ----------------------------------------------------

@dataclass(frozen=True)
class ContainmentReport:
    max_violation: float
    worst_point: complex
    samples: int

    @property
    def passed(self) -> bool:
        return self.max_violation <= 1e-9


def _circle_through(one: complex, tangent: complex, other: complex) -> tuple[complex, float]:
    """Circle through ``one`` with the given unit tangent there, also through ``other``."""
    d = one - other
    n = 1j * tangent
    rho = -abs(d) ** 2 / (2 * (d.conjugate() * n).real)
    return one + rho * n, abs(rho)


def lune_boundary_arcs(a: complex, theta: float, samples: int) -> list[np.ndarray]:
    """Sample both boundary arcs of the Z-plane lune L_a through 1 and a.

    Each arc leaves ``Z = 1`` at angle ``+-theta`` and is sampled uniformly in
    the angle seen from its centre.
    """
    arcs = []
    for sgn in (1, -1):
        tangent = cmath.exp(1j * sgn * theta)
        centre, _ = _circle_through(1.0 + 0j, tangent, a)
        start = cmath.phase(1 - centre)
        stop = cmath.phase(a - centre)
        # go round in the sense the tangent points
        turn = (tangent * (1 - centre).conjugate() * 1j).real
        orient = 1.0 if turn < 0 else -1.0
        sweep = (stop - start) * orient % (2 * math.pi)
        angles = start + orient * sweep * np.linspace(0.0, 1.0, samples)
        radius = abs(1 - centre)
        arcs.append(centre + radius * np.exp(1j * angles))
    return arcs


def lune_discs(a: complex, theta: float) -> list[tuple[complex, float]]:
    return [_circle_through(1.0 + 0j, cmath.exp(1j * s * theta), a) for s in (1, -1)]


def check_lune_containment(a: complex, cfg: LuneConfig = LuneConfig(),
                           samples: int = 360, exclusion: float = 1e-6) -> ContainmentReport:
    """Sampled check that F_a maps the closed lune L_a into L_a plus P_a.

    Violation is the signed distance outside the intersection of the two
    discs bounding L_a, maximised over both images of every boundary sample
    (images within ``exclusion`` of ``Z = 1`` are skipped).
    """
    a = complex(a)
    if samples < 16:
        raise DomainError("need at least 16 samples")
    if a != 7 and (a == 1 or not in_param_lune(a, cfg)):
        raise DomainError(f"a = {a!r} is not in L_theta or {{7}}")
    discs = lune_discs(a, cfg.theta)
    worst, worst_pt = -math.inf, complex(math.nan, math.nan)
    for arc in lune_boundary_arcs(a, cfg.theta, samples):
        for Z in arc:
            for Wp in cov_images(complex(Z)):
                W = involution_J(Wp, a)
                if abs(W - 1) < exclusion:
                    continue
                dist = max(abs(W - c) - r for c, r in discs)
                if dist > worst:
                    worst, worst_pt = dist, W
    return ContainmentReport(max(worst, 0.0), worst_pt, samples)
