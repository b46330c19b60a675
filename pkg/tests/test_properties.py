import random

import pytest

from holocorr.fatou import FatouChart
from holocorr.lunes import LuneConfig, in_doubly_truncated_lune
from holocorr.properties import (SUITE, PropertyResult, petal_points, random_lune_param,
                                 random_param, random_rational, run_suite)


def test_suite_passes():
    results = run_suite(40, seed=1)
    assert [r.name for r in results] == list(SUITE)
    for r in results:
        assert r.passed, r


def test_suite_is_deterministic():
    a = [r.as_record() for r in run_suite(15, seed=9, names=["zigzag", "minkowski"])]
    b = [r.as_record() for r in run_suite(15, seed=9, names=["zigzag", "minkowski"])]
    assert a == b


def test_seed_changes_samples():
    a = run_suite(15, seed=1, names=["involution"])[0].worst
    b = run_suite(15, seed=2, names=["involution"])[0].worst
    assert a != b


def test_result_record():
    r = PropertyResult("x", 10, 2e-9, 1e-9, 1)
    assert not r.passed
    assert r.as_record() == {"name": "x", "samples": 10, "worst": 2e-9, "tolerance": 1e-9,
                             "discarded": 1, "pass": False}


def test_zigzag_discard_rate():
    r = run_suite(1000, seed=0, names=["zigzag"])[0]
    assert r.passed
    assert r.discarded < 0.01 * (r.samples + r.discarded)


def test_samplers():
    rng = random.Random(0)
    for _ in range(200):
        a = random_param(rng)
        assert abs(a - 4) <= 3 and min(abs(a - 1), abs(a - 2), abs(a + 1)) >= 1e-3
        assert in_doubly_truncated_lune(random_lune_param(rng), LuneConfig())
        x = random_rational(rng)
        assert 0 <= x <= 1 and x.denominator <= 10_000


@pytest.mark.parametrize("chart", [FatouChart("PA", A=4), FatouChart("Q14"), FatouChart("H")])
def test_petal_points_are_in_drift_region(chart):
    for z in petal_points(chart, 20, random.Random(3)):
        assert chart.to_u(z).real > chart.drift_threshold
