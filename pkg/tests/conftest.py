import math

import pytest
from hypothesis import settings
from scipy.integrate import quad

from lossaware import EconomicParams, GaussianShiftModel

settings.register_profile("stress", max_examples=2000, deadline=None)


def normal_tail_by_quadrature(t):
    """Independent Q oracle: integrate the standard normal density."""
    density = lambda u: math.exp(-u * u / 2) / math.sqrt(2 * math.pi)
    return quad(density, t, math.inf, epsabs=1e-15, epsrel=1e-13, limit=200)[0]


def bisect_decreasing(f, lo, hi, iters=200):
    """Root of a decreasing function on [lo, hi]."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.fixture
def unit_gaussian():
    return GaussianShiftModel(1.0)


@pytest.fixture
def paper_econ():
    return EconomicParams(s=40.0, c=5.0, p0=2.0)


ACCEPTANCE_RESULTS = []


def record_criterion(label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
    ACCEPTANCE_RESULTS.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
