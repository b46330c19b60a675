"""Exact-formula algebra of the correspondence family F_a.

Three coordinates are used throughout:

* ``z``  -- the plane in which the involution is ``z -> -z`` and the
  parabolic point sits at ``z = 0``;
* ``Z = (a z + 1) / (z + 1)`` -- the plane in which ``F_a = J_a o Cov_0^Q``
  with ``Q(Z) = Z**3 - 3 Z``;
* ``z' = (a - 1) z`` -- the plane in which the dynamical lune does not move.

All functions are pure; ``a`` may be given either as a :class:`ParamA` or as
a plain number.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import BranchTrackingLost, DomainError, InvalidParam, PoleInput

POLE_TOL = 1e-12
MERGE_TOL = 1e-14

_EXCLUDED = (1.0, 2.0, -1.0)


@dataclass(frozen=True)
class ParamA:
    """A parameter value ``a`` together with its derived critical data."""

    a: complex
    b: complex = field(init=False, repr=False)
    c: complex = field(init=False, repr=False)
    v: complex = field(init=False, repr=False)

    def __post_init__(self):
        a = complex(self.a)
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise InvalidParam(f"parameter must be finite, got {a!r}")
        for bad in _EXCLUDED:
            if abs(a - bad) < POLE_TOL:
                raise InvalidParam(f"a = {a!r} is excluded (a must avoid 1, 2, -1)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", (a - 7) / (3 * (a - 1)))
        object.__setattr__(self, "c", -2 / (a + 1))
        object.__setattr__(self, "v", -1 / (a - 2))

    @property
    def critical_point(self) -> complex:
        return self.c

    @property
    def critical_value(self) -> complex:
        return self.v


AParam = Union[ParamA, complex, float, int]


def as_complex_a(a: AParam) -> complex:
    return a.a if isinstance(a, ParamA) else complex(a)


def _isinf(w: complex) -> bool:
    return cmath.isinf(w)


# --- coordinate changes -----------------------------------------------------

def z_to_Z(z: complex, a: AParam) -> complex:
    a = as_complex_a(a)
    z = complex(z)
    if _isinf(z):
        return a
    if abs(z + 1) < POLE_TOL:
        raise PoleInput("z = -1 is the pole of z -> Z")
    return (a * z + 1) / (z + 1)


def Z_to_z(Z: complex, a: AParam) -> complex:
    a = as_complex_a(a)
    Z = complex(Z)
    if _isinf(Z):
        return complex(-1.0)
    if abs(a - Z) < POLE_TOL:
        raise PoleInput("Z = a is the pole of Z -> z")
    return (Z - 1) / (a - Z)


def z_to_zprime(z: complex, a: AParam) -> complex:
    return (as_complex_a(a) - 1) * complex(z)


def involution_J(Z: complex, a: AParam) -> complex:
    """The Moebius involution of the Z-plane fixing ``Z = 1`` and ``Z = a``."""
    a = as_complex_a(a)
    if abs(a - 1) < POLE_TOL:
        raise InvalidParam("J_a is undefined at a = 1")
    Z = complex(Z)
    if _isinf(Z):
        return (1 + a) / 2
    den = 2 * Z - (1 + a)
    if abs(den) < POLE_TOL:
        raise PoleInput("Z = (1+a)/2 is the pole of J_a")
    return ((1 + a) * Z - 2 * a) / den


def involution_J_derivative(Z: complex, a: AParam) -> complex:
    a = as_complex_a(a)
    den = 2 * complex(Z) - (1 + a)
    if abs(den) < POLE_TOL:
        raise PoleInput("Z = (1+a)/2 is the pole of J_a")
    return -((a - 1) ** 2) / den ** 2


# --- the two-valued maps ----------------------------------------------------

@dataclass(frozen=True)
class BranchPair:
    w1: complex
    w2: complex
    merged: bool = False

    def __iter__(self):
        yield self.w1
        yield self.w2

    def other(self, known: complex, tol: float = 1e-7) -> complex:
        """Return the root that is not ``known``.

        At a double root equal to ``known`` the swap fixes the point and
        ``known`` is returned. Raises :class:`BranchTrackingLost` when the
        roots are too close to tell apart otherwise, or when ``known``
        matches neither of them.
        """
        d1, d2 = abs(self.w1 - known), abs(self.w2 - known)
        scale = 1.0 + abs(known)
        # closer roots than this are only known to about eps / separation
        if self.merged or abs(self.w1 - self.w2) < 1e-6 * scale:
            if max(d1, d2) <= 1e-12 * scale:
                return complex(known)
            raise BranchTrackingLost("roots merged; cannot tell branches apart")
        if min(d1, d2) > tol * scale:
            raise BranchTrackingLost("known root not found among the pair")
        return self.w2 if d1 <= d2 else self.w1


def stable_quadratic_roots(b: complex, c: complex) -> tuple[complex, complex, complex]:
    """Roots of ``w**2 + b w + c``; also returns the discriminant.

    The larger root comes from the sign-matched formula, the smaller from the
    product of the roots.
    """
    disc = b * b - 4 * c
    s = cmath.sqrt(disc)
    if (b.conjugate() * s).real < 0:
        s = -s
    q = -(b + s) / 2
    if q == 0:
        return 0j, 0j, disc
    return q, c / q, disc


def cov_images(Z: complex) -> BranchPair:
    """Both images of ``Z`` under the deleted covering correspondence of Z^3 - 3Z."""
    Z = complex(Z)
    if _isinf(Z):
        inf = complex(math.inf, 0.0)
        return BranchPair(inf, inf, True)
    w1, w2, disc = stable_quadratic_roots(Z, Z * Z - 3)
    return BranchPair(w1, w2, abs(disc) < MERGE_TOL * (1 + abs(Z) ** 2))


def corr_images(z: complex, a: AParam) -> BranchPair:
    """The two images of ``z`` under F_a (z-coordinates).

    Computed as ``J_a o Cov`` in Z-coordinates; since J_a is ``z -> -z`` in the
    z-plane the final step is a sign flip after converting back.
    """
    a = as_complex_a(a)
    pair = cov_images(z_to_Z(z, a))
    return BranchPair(-Z_to_z(pair.w1, a), -Z_to_z(pair.w2, a), pair.merged)


def corr_preimages(w: complex, a: AParam) -> BranchPair:
    a = as_complex_a(a)
    pair = cov_images(z_to_Z(-complex(w), a))
    return BranchPair(Z_to_z(pair.w1, a), Z_to_z(pair.w2, a), pair.merged)


def relation_residual(z: complex, w: complex, a: AParam) -> float:
    """Relative residual of the defining relation of F_a at the arrow ``z -> w``."""
    a = as_complex_a(a)
    X = (a * z + 1) / (z + 1)
    Y = (a * w - 1) / (w - 1)
    return abs(Y * Y + X * Y + X * X - 3) / (abs(Y) ** 2 + abs(X * Y) + abs(X) ** 2 + 3)


def zigzag_defect(z: complex, a: AParam) -> float:
    """Defect of ``(I_- o I_+)**3 = Id`` on the graph of F_a, starting at ``z``.

    ``I_+`` swaps the two images of a point and ``I_-`` the two preimages.
    Roots are tracked by elimination of the known one, which fails (with
    :class:`BranchTrackingLost`) only near merged roots.
    """
    a = as_complex_a(a)
    z0 = complex(z)
    w0 = corr_images(z0, a).w1
    zc, wc = z0, w0
    for _ in range(3):
        wc = corr_images(zc, a).other(wc)
        zc = corr_preimages(wc, a).other(zc)
    return max(abs(zc - z0), abs(wc - w0))


# --- the parabolic branch ---------------------------------------------------

def fixed_branch(zeta: complex, a: AParam) -> complex:
    """The branch of F_a fixing ``zeta = Z - 1 = 0``, in the zeta coordinate.

    Written in increments so that no cancellation happens near the fixed point.
    """
    a = as_complex_a(a)
    zeta = complex(zeta)
    # W' = 1 + eta solves eta**2 + (3 + zeta) eta + (3 zeta + zeta**2) = 0
    p = 3 + zeta
    q = 3 * zeta + zeta * zeta
    s = cmath.sqrt(p * p - 4 * q)
    if (p.conjugate() * s).real < 0:
        s = -s
    eta = -2 * q / (p + s)
    return -eta / (1 - 2 * eta / (a - 1))


def fixed_branch_quadratic_coeff(a: AParam) -> complex:
    a = as_complex_a(a)
    if abs(a - 1) < POLE_TOL:
        raise InvalidParam("a = 1 is excluded")
    return (a - 7) / (3 * (a - 1))


def estimate_fixed_branch_coeff(a: AParam, h: float = 1e-3) -> complex:
    """Numerical degree-2 Taylor coefficient of the parabolic branch.

    The four-point stencil at ``+-h, +-ih`` cancels the odd and quartic terms;
    one Richardson step then removes the ``h**4`` error.
    """
    if not 1e-4 <= h <= 1e-2:
        raise DomainError("step h must lie in [1e-4, 1e-2]")

    def stencil(t: float) -> complex:
        g = lambda x: fixed_branch(x, a)  # noqa: E731
        num = g(t) + g(-t) - g(1j * t) - g(-1j * t)
        return num / (4 * t * t)

    coarse, fine = stencil(h), stencil(h / 2)
    return (16 * fine - coarse) / 15


def cov_derivative(Z: complex, Wp: complex) -> complex:
    """dW'/dZ on the curve W'**2 + Z W' + Z**2 = 3."""
    den = 2 * Wp + Z
    if den == 0:
        return complex(math.inf, 0.0)
    return -(Wp + 2 * Z) / den


def fixed_branch_multiplier(a: AParam) -> complex:
    """Derivative of the parabolic branch at ``Z = 1`` via the chain rule."""
    return cov_derivative(1.0, 1.0) * involution_J_derivative(1.0, a)


# --- Minkowski question mark ------------------------------------------------

_MAX_CF_DIGITS = 64
_MAX_EXPONENT = 1100


def _partial_quotients(x: Fraction, limit: int | None):
    p, q = x.numerator, x.denominator
    out = []
    while q:
        k, r = divmod(p, q)
        out.append(k)
        if limit is not None and len(out) > limit:
            break
        p, q = q, r
    return out


def minkowski_q(x: Union[float, Rational]) -> float:
    """Minkowski's question-mark function on [0, 1].

    Rational input is expanded exactly; floats are converted to their exact
    binary value and truncated at 64 partial quotients.
    """
    if isinstance(x, Rational):
        frac, limit = Fraction(x), None
    else:
        xf = float(x)
        if not math.isfinite(xf):
            raise DomainError("x must be finite")
        frac, limit = Fraction(xf), _MAX_CF_DIGITS
    if frac < 0 or frac > 1:
        raise DomainError(f"x = {x!r} lies outside [0, 1]")
    digits = _partial_quotients(frac, limit)
    total = Fraction(digits[0])
    exponent, sign = 0, 1
    for k in digits[1:]:
        exponent += k
        if exponent > _MAX_EXPONENT:
            break
        total += sign * Fraction(2, 2 ** exponent)
        sign = -sign
    return float(total)
