import cmath
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from holocorr.errors import DomainError
from holocorr.exact import (InexactDivision, IntPoly2, SurdPoly, SurdPolyInV,
                            appendix_certificate, build_curve_equation, certificate_json,
                            default_Q, listed_eq2_coefficients, numeric_gap_check, poly_in_U,
                            sylvester_matrix, sylvester_resultant)

d_, U_, V_, s_ = sp.symbols("d U V s")
D, U = IntPoly2.d(), IntPoly2.U()


def int2_to_sympy(p: IntPoly2):
    return sum((c * d_ ** i * U_ ** j for (i, j), c in p.terms.items()), sp.Integer(0))


def surd_to_sympy(p: SurdPoly):
    return int2_to_sympy(p.rat) + s_ * int2_to_sympy(p.surd)


def inv_to_sympy(f: SurdPolyInV):
    return sum((surd_to_sympy(c) * V_ ** k for k, c in enumerate(f.coeffs)), sp.Integer(0))


def reduce_surd(expr):
    """Rewrite an expression polynomial in s modulo s**2 = 3."""
    return sp.expand(sp.rem(sp.expand(expr), s_ ** 2 - 3, s_))


# strategies for small exact values

small_int = st.integers(-5, 5)
int2 = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), small_int,
                       max_size=4).map(IntPoly2)
surd = st.builds(SurdPoly, int2, int2)


@given(surd, surd, surd)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + (-x) == SurdPoly()


@given(surd, surd)
def test_surd_arithmetic_matches_sympy(x, y):
    assert reduce_surd(surd_to_sympy(x * y) - surd_to_sympy(x) * surd_to_sympy(y)) == 0


@given(surd, surd)
def test_norm_is_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


def test_sqrt3_squared():
    assert SurdPoly.sqrt3() * SurdPoly.sqrt3() == SurdPoly(3)


@given(surd, surd)
def test_exact_division_recovers_factor(x, y):
    if y.is_zero():
        return
    assert (x * y).exact_div(y) == x


def test_inexact_division():
    with pytest.raises(InexactDivision):
        (U + 1).exact_div(2 * D + 0)
    with pytest.raises(InexactDivision):
        SurdPoly(U).exact_div(SurdPoly(D))


def test_intpoly_helpers():
    p = 3 * D * D * U + U ** 3 - 7
    assert p.diff_U() == 3 * D * D + 3 * U * U
    assert p.subs_d(2) == 12 * U + U ** 3 - 7
    assert p.subs_d_squared(3) == 9 * U + U ** 3 - 7
    with pytest.raises(ValueError):
        (D * U).subs_d_squared(3)
    assert str(25 * U ** 4 - D * D * U + 1) == "-d^2*U + 25*U^4 + 1"
    assert IntPoly2() == 0 and not IntPoly2()
    assert int2_to_sympy(p) == 3 * d_ ** 2 * U_ + U_ ** 3 - 7


def test_degree_bookkeeping():
    f = SurdPolyInV([1, 2, SurdPoly()])
    assert f.degree == 1
    assert (f - f).degree == -1
    assert (SurdPolyInV.V() ** 4).degree == 4


# resultants

def test_resultant_examples():
    V = SurdPolyInV.V()
    assert sylvester_resultant(V - 1, V + 1) == SurdPoly(2)
    assert sylvester_resultant(V - 2, V * V - 4) == SurdPoly()
    assert sylvester_resultant(SurdPolyInV([3]), V * V + 1) == SurdPoly(9)


def small_inv(rng, degree):
    cs = [SurdPoly(rng.randint(-4, 4), rng.randint(-2, 2)) for _ in range(degree)]
    cs.append(SurdPoly(rng.randint(1, 4), rng.randint(-2, 2)))
    return SurdPolyInV(cs)


@pytest.mark.parametrize("seed", range(10))
def test_resultant_multiplicative(seed):
    rng = random.Random(seed)
    f, g, h = small_inv(rng, 1), small_inv(rng, 2), small_inv(rng, 2)
    assert sylvester_resultant(f * g, h) == sylvester_resultant(f, h) * sylvester_resultant(g, h)


def float_coeffs(f: SurdPolyInV):
    return [c.evaluate(0, 0, math.sqrt(3)) for c in reversed(f.coeffs)]


@pytest.mark.parametrize("seed", range(8))
def test_resultant_is_product_over_roots(seed):
    # Res(f, g) = lc(f)**deg(g) * prod g(alpha) over the roots alpha of f
    rng = random.Random(100 + seed)
    f = small_inv(rng, rng.randint(1, 3))
    g = small_inv(rng, rng.randint(1, 3))
    fc, gc = float_coeffs(f), float_coeffs(g)
    expected = fc[0] ** g.degree * np.prod([np.polyval(gc, r) for r in np.roots(fc)])
    got = sylvester_resultant(f, g).evaluate(0, 0, math.sqrt(3))
    assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected))


@pytest.mark.parametrize("seed", range(6))
def test_resultant_against_sympy_even_degrees(seed):
    # sympy's resultant can differ by (-1)**(deg f * deg g); even products avoid that
    rng = random.Random(200 + seed)
    f, g = small_inv(rng, 2), small_inv(rng, rng.choice([1, 2, 3]))
    expected = sp.resultant(inv_to_sympy(f), inv_to_sympy(g), V_)
    assert reduce_surd(expected - surd_to_sympy(sylvester_resultant(f, g))) == 0


def test_sylvester_shape():
    f = build_curve_equation("Eq2")
    rows = sylvester_matrix(f, build_curve_equation("Eq3"))
    assert len(rows) == 8 and all(len(r) == 8 for r in rows)
    assert rows[0][0] == f.coeff(4)


# curve equations

def test_eq1_vanishes_on_lift_of_circle():
    # Z = w + 1/w lifts C_d (centre 4 - d i, through 1 and 7) to the (U, V) plane
    eq1 = build_curve_equation("Eq1")
    rng = random.Random(5)
    for _ in range(40):
        d = rng.uniform(-3, 3)
        Z = complex(4, -d) + math.sqrt(9 + d * d) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        for w in np.roots([1, -Z, 1]):
            val = eq1.evaluate(d, w.real, w.imag, math.sqrt(3))
            assert abs(val) < 1e-9 * (1 + abs(w)) ** 4


def test_eq1_through_lift_of_one():
    eq1 = build_curve_equation("Eq1")
    for d in (-2, 0, 0.5, 10):
        assert abs(eq1.evaluate(d, 0.5, math.sqrt(3) / 2, math.sqrt(3))) < 1e-12


def test_eq2_is_rotation_of_eq1():
    # Cov lifts to rotation by 2 pi / 3 in w, so Eq2 describes the rotated lift
    e1 = inv_to_sympy(build_curve_equation("Eq1"))
    rot = e1.subs({U_: (-U_ + s_ * V_) / 2, V_: (-s_ * U_ - V_) / 2}, simultaneous=True)
    e2 = inv_to_sympy(build_curve_equation("Eq2"))
    assert reduce_surd(rot - e2) == 0


def test_eq2_listed_coefficients():
    eq2 = build_curve_equation("Eq2")
    assert eq2 == listed_eq2_coefficients()
    assert eq2.coeff(4) == SurdPoly(1)
    assert eq2.coeff(3) == SurdPoly(-D, -4)
    assert build_curve_equation("Eq3") == eq2.conjugate()
    with pytest.raises(ValueError):
        build_curve_equation("Eq4")


@pytest.fixture(scope="module")
def resultant_P():
    return sylvester_resultant(build_curve_equation("Eq2"), build_curve_equation("Eq3"))


def test_resultant_is_conjugation_invariant(resultant_P):
    assert resultant_P.surd.is_zero()
    assert resultant_P.conjugate() == resultant_P


def test_resultant_against_float_determinant(resultant_P):
    rng = random.Random(11)
    eq2, eq3 = build_curve_equation("Eq2"), build_curve_equation("Eq3")
    r3 = math.sqrt(3)
    for _ in range(20):
        d = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        u = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        M = np.zeros((8, 8))
        f = [eq2.coeff(k).evaluate(float(d), float(u), r3) for k in range(4, -1, -1)]
        g = [eq3.coeff(k).evaluate(float(d), float(u), r3) for k in range(4, -1, -1)]
        for i in range(4):
            M[i, i:i + 5] = f
            M[4 + i, i:i + 5] = g
        det = np.linalg.det(M)
        exact = resultant_P.rat.evaluate(d, u)
        assert abs(det - float(exact)) <= 1e-6 * max(abs(float(exact)), 1.0)


def test_resultant_exact_at_rational_point(resultant_P):
    # an independent exact determinant at one rational (d, U)
    dv, uv = sp.Rational(2, 7), sp.Rational(-1, 3)
    e2 = inv_to_sympy(build_curve_equation("Eq2")).subs({d_: dv, U_: uv})
    e3 = inv_to_sympy(build_curve_equation("Eq3")).subs({d_: dv, U_: uv})
    res = reduce_surd(sp.resultant(sp.expand(e2), sp.expand(e3), V_))
    assert res == resultant_P.rat.evaluate(Fraction(2, 7), Fraction(-1, 3))


def test_q_discriminant_against_sympy():
    Q = default_Q()
    q = int2_to_sympy(Q)
    expected = sp.expand(sp.resultant(q, sp.diff(q, U_), U_))
    ours = sylvester_resultant(poly_in_U(Q), poly_in_U(Q.diff_U()))
    assert ours.surd.is_zero()
    assert sp.expand(int2_to_sympy(ours.rat) - expected) == 0


def test_published_identities_by_sympy():
    q = int2_to_sympy(default_Q())
    assert sp.expand(5 * q.subs(d_, 0) - (5 * U_ ** 2 * (5 * U_ + 4) ** 2 + 16 * (5 * U_ + 2) ** 2 + 256)) == 0
    assert sp.expand(q.subs(d_, sp.sqrt(3)) - (U_ + 1) ** 2 * (28 * U_ ** 2 - 16 * U_ + 64)) == 0
    assert sp.factorint(143327232) == {2: 16, 3: 7}


# certificate

def test_certificate_all_pass():
    report = appendix_certificate()
    assert report["all_pass"] is True
    names = [c["name"] for c in report["checks"]]
    for required in ("resultant_factorization", "q_at_d0_sum_of_squares",
                     "q_at_d2_eq_3_factorization", "q_discriminant_resultant",
                     "resultant_surd_part_zero", "constant_factorization"):
        assert required in names
    signs = {c["name"]: c.get("convention_sign") for c in report["checks"]}
    assert signs["resultant_factorization"] == 1
    assert signs["q_discriminant_resultant"] == 1


@pytest.mark.parametrize("key", [(0, 0), (0, 3), (2, 4), (2, 1)])
def test_certificate_detects_mutation(key):
    Q = default_Q()
    terms = dict(Q.terms)
    terms[key] = terms.get(key, 0) + 1
    report = appendix_certificate(IntPoly2(terms))
    assert report["all_pass"] is False


def test_certificate_json_sorted():
    text = certificate_json(appendix_certificate())
    data = json.loads(text)
    assert data["all_pass"] is True
    assert text == json.dumps(data, sort_keys=True, indent=2)


# numerical gap

@pytest.mark.parametrize("d", [0.0, 1.0, -1.2, math.sqrt(3), -math.sqrt(3)])
def test_gap_positive(d):
    assert numeric_gap_check(d, 720) > 0


def test_gap_domain():
    with pytest.raises(DomainError):
        numeric_gap_check(2.0)
    with pytest.raises(DomainError):
        numeric_gap_check(0.0, 0)
