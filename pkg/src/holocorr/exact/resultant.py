"""Sylvester matrices and fraction-free determinants over Z[sqrt3][d, U]."""
from __future__ import annotations

from .poly import SurdPoly, SurdPolyInV


def sylvester_matrix(f: SurdPolyInV, g: SurdPolyInV) -> list[list[SurdPoly]]:
    """Rows of ``f`` shifted ``deg g`` times, then rows of ``g`` shifted ``deg f`` times.

    Coefficients run from the leading one leftwards.
    """
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        raise ValueError("resultant of the zero polynomial is undefined")
    size = n + m
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        rows.append([SurdPoly()] * i + fc + [SurdPoly()] * (size - n - 1 - i))
    for i in range(n):
        rows.append([SurdPoly()] * i + gc + [SurdPoly()] * (size - m - 1 - i))
    return rows


def bareiss_det(matrix: list[list[SurdPoly]]) -> SurdPoly:
    """Determinant by fraction-free elimination with row swaps."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return SurdPoly(1)
    sign = 1
    prev = SurdPoly(1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return SurdPoly()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            a_ik = M[i][k]
            for j in range(k + 1, n):
                num = piv * M[i][j] - a_ik * M[k][j]
                M[i][j] = num.exact_div(prev) if not num.is_zero() else num
            M[i][k] = SurdPoly()
        prev = piv
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_resultant(f: SurdPolyInV, g: SurdPolyInV) -> SurdPoly:
    """``det`` of :func:`sylvester_matrix`; ``Res(f, const c) = c**deg f``."""
    if f.degree == 0 and g.degree == 0:
        return SurdPoly(1)
    if g.degree == 0:
        out = SurdPoly(1)
        for _ in range(f.degree):
            out = out * g.coeffs[0]
        return out
    if f.degree == 0:
        out = SurdPoly(1)
        for _ in range(g.degree):
            out = out * f.coeffs[0]
        return out
    return bareiss_det(sylvester_matrix(f, g))
