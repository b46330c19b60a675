"""The circle-intersection identities, rebuilt and checked in exact arithmetic.

The curves are the lifts of the circles ``C_d`` (through 1 and 7, centre
``4 - d i``) to the ``(U, V)`` plane, together with their two rotations by
``2 pi / 3``.  Everything lives in Z[sqrt3][d, U][V].
"""
from __future__ import annotations

import cmath
import json
import math
from typing import Optional

from ..corr import cov_images
from ..errors import DomainError
from .poly import IntPoly2, SurdPoly, SurdPolyInV, poly_in_U
from .resultant import sylvester_resultant

_d = IntPoly2.d()
_U = IntPoly2.U()
_V = SurdPolyInV.V()
_S3 = SurdPoly.sqrt3()

CONSTANT = -143327232


def _inv(x) -> SurdPolyInV:
    return SurdPolyInV([x])


def _eq1() -> SurdPolyInV:
    U, d, V = _inv(_U), _inv(_d), _V
    r2 = U * U + V * V
    return r2 * (r2 - 8 * U + 7) + 2 * d * V * (r2 - 1) + 2 * U * U - 2 * V * V - 8 * U + 1


def _eq2(sign: int) -> SurdPolyInV:
    U, d, V = _inv(_U), _inv(_d), _V
    s = _inv(_S3 * sign)
    r2 = U * U + V * V
    return (
        r2 * (r2 + 4 * (U - s * V) + 7)
        - d * (s * U + V) * (r2 - 1)
        - U * U
        + V * V
        - 2 * s * U * V
        + 4 * (U - s * V)
        + 1
    )


def build_curve_equation(which: str) -> SurdPolyInV:
    """``"Eq1"``, ``"Eq2"`` or ``"Eq3"`` as a polynomial in V."""
    if which == "Eq1":
        return _eq1()
    if which == "Eq2":
        return _eq2(1)
    if which == "Eq3":
        return _eq2(-1)
    raise ValueError(f"unknown curve equation {which!r}")


def listed_eq2_coefficients() -> SurdPolyInV:
    """The coefficients ``a_0 .. a_4`` of Eq2 written out term by term."""
    U, d = _U, _d
    a4 = SurdPoly(1)
    a3 = SurdPoly(-d, -4)
    a2 = SurdPoly(2 * U * U + 4 * U + 8, -(d * U))
    a1 = SurdPoly(-(d * U * U) + d, -4 * U * U - 2 * U - 4)
    a0 = SurdPoly(U ** 4 + 4 * U ** 3 + 6 * U * U + 4 * U + 1, -(d * U ** 3) + d * U)
    return SurdPolyInV([a0, a1, a2, a3, a4])


def rotated_eq1_times_16() -> SurdPolyInV:
    """``16 * Eq1`` after the rotation ``(U, V) -> R(U, V)`` by 2 pi / 3.

    Each monomial ``U^j V^k`` is written as ``(2U)^j (2V)^k 2^(4-j-k) / 16``
    and ``2U, 2V`` are replaced by ``-U + sqrt3 V`` and ``-sqrt3 U - V``.
    """
    X = _inv(-_U) + _inv(_S3) * _V
    Y = _inv(-(_S3 * _U)) - _V
    out = SurdPolyInV()
    for k, coeff in enumerate(_eq1().coeffs):
        if not coeff.surd.is_zero():
            raise ValueError("Eq1 has no surd part")
        for (i, j), c in coeff.rat.terms.items():
            scale = 2 ** (4 - j - k)
            out = out + _inv(IntPoly2({(i, 0): c * scale})) * X ** j * Y ** k
    return out


def default_Q() -> IntPoly2:
    d2 = _d * _d
    return (d2 + 25) * _U ** 4 + 40 * _U ** 3 + (96 - 12 * d2) * _U * _U + (64 + 16 * d2) * _U + 64


def _check(name: str, expected, computed, ok: bool, **extra) -> dict:
    rec = {"name": name, "expected": str(expected), "computed": str(computed), "pass": bool(ok)}
    rec.update(extra)
    return rec


def _signed_match(name: str, expected: SurdPoly, computed: SurdPoly, label: str) -> dict:
    if computed == expected:
        sign = 1
    elif computed == -expected:
        sign = -1
    else:
        sign = 0
    return _check(name, label, computed, sign != 0, convention_sign=sign)


def appendix_certificate(q_override: Optional[IntPoly2] = None) -> dict:
    """Run every exact check; ``q_override`` replaces Q (for mutation tests)."""
    Q = default_Q() if q_override is None else q_override
    eq1, eq2, eq3 = (build_curve_equation(w) for w in ("Eq1", "Eq2", "Eq3"))
    checks = []

    listed = listed_eq2_coefficients()
    checks.append(_check("eq2_coefficients", listed, eq2, eq2 == listed))
    rot = rotated_eq1_times_16()
    checks.append(_check("eq2_is_rotated_eq1", "16*Eq2", rot, rot == 16 * eq2))
    checks.append(_check("eq3_is_conjugate_of_eq2", "conj(Eq2)", eq3, eq3 == eq2.conjugate()))
    eq1_ok = eq1.evaluate(0.7, 0.5, math.sqrt(3) / 2, math.sqrt(3))
    checks.append(
        _check("eq1_through_lift_of_one", 0, eq1_ok, abs(eq1_ok) < 1e-12)
    )

    P = sylvester_resultant(eq2, eq3)
    checks.append(_check("resultant_surd_part_zero", 0, P.surd, P.surd.is_zero()))
    expected_P = SurdPoly(2304 * (_d * _d + 9) * (_U + 1) ** 4 * Q)
    checks.append(
        _signed_match(
            "resultant_factorization", expected_P, P, "2304*(d^2+9)*(U+1)^4*Q(U)"
        )
    )

    lhs = 5 * Q.subs_d(0)
    rhs = 5 * _U * _U * (5 * _U + 4) ** 2 + 16 * (5 * _U + 2) ** 2 + 256
    checks.append(
        _check("q_at_d0_sum_of_squares", "5*U^2*(5U+4)^2 + 16*(5U+2)^2 + 256", lhs, lhs == rhs)
    )

    try:
        q3 = Q.subs_d_squared(3)
        q3_ok = q3 == (_U + 1) ** 2 * (28 * _U * _U - 16 * _U + 64)
    except ValueError:
        q3, q3_ok = "odd power of d", False
    checks.append(_check("q_at_d2_eq_3_factorization", "(U+1)^2*(28U^2-16U+64)", q3, q3_ok))

    disc = sylvester_resultant(poly_in_U(Q), poly_in_U(Q.diff_U()))
    d2 = _d * _d
    expected_disc = SurdPoly(CONSTANT * d2 * d2 * (d2 + 25) * (d2 - 3) * (d2 + 24) ** 2)
    checks.append(
        _signed_match(
            "q_discriminant_resultant",
            expected_disc,
            disc,
            f"{CONSTANT}*d^4*(d^2+25)*(d^2-3)*(d^2+24)^2",
        )
    )
    checks.append(
        _check("constant_factorization", "-2^16*3^7", CONSTANT, CONSTANT == -(2 ** 16) * 3 ** 7)
    )
    return {"checks": checks, "all_pass": all(c["pass"] for c in checks)}


def certificate_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def numeric_gap_check(d: float, samples: int = 720) -> float:
    """Smallest distance from ``Cov(C_d)`` to ``C_d``, away from ``Z = 1``."""
    if not math.isfinite(d) or abs(d) > math.sqrt(3) * (1 + 1e-12):
        raise DomainError(f"|d| = {abs(d)} exceeds sqrt(3)")
    if samples < 1:
        raise DomainError("samples must be positive")
    centre = complex(4.0, -d)
    radius = math.sqrt(9.0 + d * d)
    base = cmath.phase(1 - centre)
    best = math.inf
    for k in range(samples):
        t = 2 * math.pi * k / samples
        offset = (t - base + math.pi) % (2 * math.pi) - math.pi
        if abs(offset) <= 0.1:
            continue
        Z = centre + radius * cmath.exp(1j * t)
        for W in cov_images(Z):
            best = min(best, abs(abs(W - centre) - radius))
    return best
