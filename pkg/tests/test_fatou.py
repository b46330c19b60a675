import cmath
import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from holocorr.corr import cov_images, fixed_branch, involution_J
from holocorr.errors import (DegenerateParam, DomainError, InvalidParam, NotInPetal,
                             NotInShiftLocus, PoleInput)
from holocorr.fatou import (FatouChart, abel_defect, check_h_conjugacy, fatou_coordinate,
                            h_conjugator, h_map, milnor_coordinate, p0_map, prefatou_psi)
from holocorr.properties import petal_points


@pytest.fixture(scope="module")
def charts():
    return {"PA": FatouChart("PA", A=4), "Q14": FatouChart("Q14"), "H": FatouChart("H")}


EXACT_LOG_COEFF = {"PA": 1 / 16, "Q14": 1.0, "H": 0.25}


# pre-Fatou coordinate

def test_prefatou_examples():
    assert prefatou_psi(1, 4) == pytest.approx(3)
    for a in (4, 5 + 1j, 2.5 - 0.5j):
        b = (a - 7) / (3 * (a - 1))
        assert prefatou_psi(-1 / b, a) == pytest.approx(1)


def test_prefatou_errors():
    with pytest.raises(PoleInput):
        prefatou_psi(0, 4)
    with pytest.raises(DegenerateParam):
        prefatou_psi(1, 7)
    with pytest.raises(InvalidParam):
        prefatou_psi(1, 1)


def branch_image(zeta, a):
    # zeta = Z - 1; the image of Z under J_a o Cov closest to Z
    Z = 1 + zeta
    W = min((involution_J(w, a) for w in cov_images(Z)), key=lambda w: abs(w - Z))
    return W - 1


@pytest.mark.parametrize("a", [4, 5.5 + 0.5j, 3 - 1j])
def test_prefatou_straightens_branch(a):
    b = (a - 7) / (3 * (a - 1))
    for r in (1e-3, 1e-4):
        # the repelling direction of zeta -> zeta + b zeta**2 is along 1/b
        zeta = r * abs(b) / b
        w = fixed_branch(zeta, a)
        assert abs(w - branch_image(zeta, a)) < 1e-15
        assert abs(prefatou_psi(w, a) - prefatou_psi(zeta, a) - 1) < 10 * r


# charts

def test_normalisation_exact(charts):
    for c in charts.values():
        assert c.coordinate(c.normalization_point) == 1


def test_chart_examples(charts):
    pa = charts["PA"]
    assert pa.normalization_point == 2
    assert fatou_coordinate(pa, 2) == 1
    assert abs(fatou_coordinate(pa, 2 + 1 / 2 + 4) - 2) < 1e-8
    assert fatou_coordinate(charts["Q14"], 0.25) == 1
    assert charts["H"].normalization_point == 3


def test_log_coefficients(charts):
    for name, c in charts.items():
        assert abs(c.log_coefficient - EXACT_LOG_COEFF[name]) < 1e-7
        assert c.residual <= 1e-8


def test_chart_construction_errors():
    with pytest.raises(DomainError):
        FatouChart("PA")
    with pytest.raises(DomainError):
        FatouChart("PA", A=0)
    with pytest.raises(DomainError):
        FatouChart("XX")
    with pytest.raises(DomainError):
        FatouChart("Q14", iteration_depth=50)


@pytest.mark.parametrize("name", ["PA", "Q14", "H"])
def test_abel_equation(charts, name):
    c = charts[name]
    pts = petal_points(c, 100, random.Random(name))
    assert max(abel_defect(c, z) for z in pts) <= 1e-8


@pytest.mark.parametrize("name", ["PA", "Q14", "H"])
def test_depth_stability(charts, name):
    c = charts[name]
    for z in petal_points(c, 10, random.Random(f"depth:{name}")):
        assert abs(c.coordinate(z) - c.coordinate(z, c.iteration_depth + 200)) < 1e-6


def mp_fatou_difference(chart, z1, z2, n=20000):
    """phi(z1) - phi(z2) from high-precision orbits and the exact log coefficient."""
    mpmath.mp.dps = 30
    ahat = EXACT_LOG_COEFF[chart.map_id]
    if chart.map_id == "PA":
        A = mpmath.mpc(chart.A)
        step, to_u = (lambda z: z + 1 / z + A), (lambda z: z / A)
    elif chart.map_id == "Q14":
        step, to_u = (lambda z: z * z + mpmath.mpf(1) / 4), (lambda z: 1 / (mpmath.mpf(1) / 2 - z))
    else:
        step = lambda z: (z * z + mpmath.mpf(1) / 3) / (z * z / 3 + 1)  # noqa: E731
        to_u = lambda z: ((z + 1) / (z - 1)) ** 2 / 2  # noqa: E731
    w1, w2 = mpmath.mpc(z1), mpmath.mpc(z2)
    for _ in range(n):
        w1, w2 = step(w1), step(w2)
    u1, u2 = to_u(w1), to_u(w2)
    return complex(u1 - u2 - ahat * (mpmath.log(u1) - mpmath.log(u2)))


@pytest.mark.parametrize("name, z1, z2", [
    ("PA", 6 + 1j, 2),
    ("Q14", 0.1 + 0.2j, 0.25),
    ("Q14", -0.3, 0.25),
    ("H", 2 + 0.5j, 3),
])
def test_fatou_against_high_precision_orbits(charts, name, z1, z2):
    c = charts[name]
    expected = mp_fatou_difference(c, z1, z2)
    assert abs((c.coordinate(z1) - c.coordinate(z2)) - expected) < 1e-6


def test_not_in_petal(charts):
    with pytest.raises(NotInPetal):
        charts["Q14"].coordinate(1.0)
    with pytest.raises(NotInPetal):
        charts["PA"].coordinate(0)


# h and P_0

def test_h_examples():
    assert h_map(complex(math.inf)) == 3
    assert h_map(0) == pytest.approx(1 / 3)
    assert h_conjugator(complex(math.inf)) == 1
    assert cmath.isinf(h_conjugator(1))


def test_h_conjugacy_suite():
    assert check_h_conjugacy(100) <= 1e-10
    with pytest.raises(DomainError):
        check_h_conjugacy(5)


@given(st.floats(0.2, 10), st.floats(-math.pi, math.pi))
def test_h_conjugacy_pointwise(r, t):
    z = cmath.rect(r, t)
    x = h_conjugator(z)
    if abs(z - 1) < 0.05 or min(abs(x - 1j * math.sqrt(3)), abs(x + 1j * math.sqrt(3))) < 0.05:
        return
    lhs, rhs = h_conjugator(p0_map(z)), h_map(x)
    assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))


# Milnor coordinate

def test_milnor_inside_m1():
    with pytest.raises(NotInShiftLocus):
        milnor_coordinate(0)
    with pytest.raises(NotInShiftLocus):
        milnor_coordinate(1)


def test_milnor_minus_fifteen():
    m = milnor_coordinate(-15)
    assert m.entry_index >= 0
    chart = FatouChart("PA", A=m.A)
    v = 2 + m.A
    assert abs(chart.coordinate(chart.map(v)) - chart.coordinate(v) - 1) < 1e-6
    assert abs(chart.coordinate(v) - m.fatou_value) < 1e-12
    q = FatouChart("Q14")
    assert abs(q.coordinate(m.model_point) - m.fatou_value) < 1e-8
    assert m.fatou_value.real <= 1


def test_milnor_continuity():
    m1, m2 = milnor_coordinate(-15), milnor_coordinate(-15 + 1e-6j)
    assert abs(m1.model_point - m2.model_point) < 1e-3


def test_milnor_depth_stability():
    for B in (-15, 2 + 1j, -3.5 + 0.5j):
        t1 = milnor_coordinate(B, 2000).fatou_value
        t2 = milnor_coordinate(B, 2200).fatou_value
        assert abs(t1 - t2) < 1e-6


def test_milnor_fatou_value_symmetry():
    # the two square roots of 1 - B give Fatou values t and 2 - t
    B = -6 + 2j
    A = cmath.sqrt(1 - B)
    t_plus = FatouChart("PA", A=A).coordinate(2 + A)
    t_minus = FatouChart("PA", A=-A).coordinate(2 - A)
    assert abs(t_plus + t_minus - 2) < 1e-8


def test_entry_index_monotone_along_real_rays():
    left = [milnor_coordinate(B).entry_index for B in np.linspace(-40, -3.02, 38)]
    assert left == sorted(left)
    right = [milnor_coordinate(B).entry_index for B in np.linspace(6, 1.05, 12)]
    assert right == sorted(right)


@given(st.floats(-40, -3.05), st.floats(0.001, 0.5))
def test_entry_index_monotone_pairs(B, step):
    lo, hi = milnor_coordinate(B), milnor_coordinate(min(B + step, -3.02))
    assert lo.entry_index <= hi.entry_index


def test_milnor_record():
    rec = milnor_coordinate(-15).as_record()
    assert set(rec) == {"B", "A", "entry_index", "model_point", "fatou_value"}
    assert rec["A"] == [-4.0, -0.0]
