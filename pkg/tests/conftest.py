import cmath
import math

import pytest
from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


def complex_in_box(lo_re, hi_re, lo_im, hi_im):
    return st.builds(
        complex,
        st.floats(lo_re, hi_re, allow_nan=False, allow_infinity=False),
        st.floats(lo_im, hi_im, allow_nan=False, allow_infinity=False),
    )


def params_in_disc():
    """Parameters in |a - 4| <= 3, away from the excluded values."""
    return st.builds(
        lambda r, t: 4 + cmath.rect(3 * math.sqrt(r), t),
        st.floats(0, 1),
        st.floats(-math.pi, math.pi),
    ).filter(lambda a: min(abs(a - 1), abs(a - 2), abs(a + 1)) > 1e-2)


@pytest.fixture(scope="session")
def compiled_kernels():
    from holocorr import _kernels

    return _kernels.compiled()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion."""

    def record(label: str, ok: bool, detail: str, seconds: float):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({seconds:.2f} s)"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
