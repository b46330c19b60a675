import cmath
import math

import pytest
from hypothesis import assume, given, strategies as st

from conftest import complex_in_box
from holocorr.errors import DomainError, InvalidParam
from holocorr.lunes import (LuneConfig, check_lune_containment, in_doubly_truncated_lune,
                            in_dynamical_lune, in_param_lune, in_truncated_lune,
                            lune_boundary_arcs)

CFG = LuneConfig()


def test_default_config():
    assert CFG.theta == pytest.approx(math.pi / 3)
    assert CFG.theta_hat == pytest.approx(0.45 * math.pi)
    assert CFG.u7_radius == 0.05


@pytest.mark.parametrize("theta,theta_hat", [(1.0, 1.2), (1.2, 1.1), (1.2, math.pi / 2)])
def test_invalid_config(theta, theta_hat):
    with pytest.raises(InvalidParam):
        LuneConfig(theta=theta, theta_hat=theta_hat)


def test_param_lune_examples():
    assert in_param_lune(4, CFG)
    assert not in_param_lune(7.5, CFG)
    assert not in_truncated_lune(1.5, LuneConfig(theta_hat=0.45 * math.pi))


def test_param_lune_rejects_vertices():
    with pytest.raises(InvalidParam):
        in_param_lune(7, CFG)
    with pytest.raises(InvalidParam):
        in_truncated_lune(2, CFG)


def test_doubly_truncated_excises_disc_at_seven():
    assert not in_doubly_truncated_lune(6.99, CFG)
    assert in_doubly_truncated_lune(6.9, CFG)


def test_dynamical_lune_examples():
    assert in_dynamical_lune(-0.5, 4, CFG)
    assert not in_dynamical_lune(0.5, 4, CFG)
    assert in_dynamical_lune(0, 4, CFG, closed=True)
    assert not in_dynamical_lune(0, 4, CFG, closed=False)


sample_a = complex_in_box(-1, 9, -5, 5).filter(
    lambda a: min(abs(a - 1), abs(a - 2), abs(a - 7)) > 1e-9)


@given(sample_a)
def test_nesting(a):
    from holocorr.lunes import within_angle

    if in_truncated_lune(a, CFG):
        assert in_param_lune(a, CFG)
    if in_doubly_truncated_lune(a, CFG):
        # K is cut from the closure of L'_theta
        assert within_angle((a - 1) / (7 - a), CFG.theta, closed=True)
        assert within_angle((a - 1) / (a - 2), CFG.theta_hat, closed=True)
        assert abs(a - 7) > CFG.u7_radius


@given(sample_a)
def test_conjugation_symmetry(a):
    b = a.conjugate()
    assert in_param_lune(a, CFG) == in_param_lune(b, CFG)
    assert in_truncated_lune(a, CFG) == in_truncated_lune(b, CFG)
    assert in_doubly_truncated_lune(a, CFG) == in_doubly_truncated_lune(b, CFG)


@given(complex_in_box(-4, 4, -4, 4), complex_in_box(2.5, 6.5, -2, 2),
       st.floats(0.01, 100))
def test_dynamical_lune_scale_invariance(z, a, t):
    w = -(a - 1) * z
    assume(abs(w) > 1e-6)
    # membership depends only on arg(-(a-1) z); keep away from the boundary
    assume(abs(abs(cmath.phase(w)) - CFG.theta_hat) > 1e-9)
    assert in_dynamical_lune(z, a, CFG) == in_dynamical_lune(z * t, a, CFG)
    assert in_dynamical_lune(z, a, CFG) == (abs(cmath.phase(w)) < CFG.theta_hat)


@pytest.mark.parametrize("a", [4, 5 + 1j, 3 - 0.5j, 7, 6.5 + 2j])
def test_boundary_arcs_are_rays_in_zprime(a):
    for sign, arc in zip((1, -1), lune_boundary_arcs(a, CFG.theta, 64)):
        assert abs(arc[0] - 1) < 1e-12 and abs(arc[-1] - a) < 1e-12
        for Z in arc[1:-1]:
            zp = (a - 1) * (Z - 1) / (a - Z)
            assert cmath.phase(zp) == pytest.approx(sign * CFG.theta, abs=1e-9)


@pytest.mark.parametrize("a", [4, 7])
def test_containment_examples(a):
    rep = check_lune_containment(a, CFG, 360)
    assert rep.max_violation <= 1e-9
    assert rep.passed


def test_containment_domain():
    with pytest.raises(DomainError):
        check_lune_containment(7.5, CFG, 360)
    with pytest.raises(DomainError):
        check_lune_containment(4, CFG, 8)


@pytest.mark.parametrize("a", [5 + 2j, 2.5 - 1j])
def test_containment_wide_lune(a):
    wide = LuneConfig(theta=1.5, theta_hat=1.55)
    assert in_param_lune(a, wide)
    rep = check_lune_containment(a, wide, 360)
    assert rep.passed
    assert cmath.isfinite(rep.worst_point)
