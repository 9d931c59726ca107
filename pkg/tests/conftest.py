import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyptom.hypcore import HPoint, Isometry
from hyptom.geodesics import geodesic_through

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def hpoints(draw, max_r=2.5):
    """Points within hyperbolic distance ``max_r`` of the apex."""
    r = draw(st.floats(0.0, max_r, allow_nan=False))
    phi = draw(st.floats(0.0, 2 * math.pi, allow_nan=False))
    return HPoint(math.cosh(r), math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi))


@st.composite
def geodesics(draw, max_r=2.0):
    p = draw(hpoints(max_r))
    q = draw(hpoints(max_r))
    if np.abs(p.vec - q.vec).max() < 1e-6:
        q = Isometry.boost_to(p)(HPoint(math.cosh(0.5), math.sinh(0.5), 0.0))
    return geodesic_through(p, q)


@st.composite
def isometries(draw, max_shift=1.5, reflect=True):
    seed = draw(st.integers(0, 2**32 - 1))
    return Isometry.random(np.random.default_rng(seed), max_shift, reflect)


@pytest.fixture(scope="session")
def reuleaux_body():
    from hyptom.constructions import reuleaux

    return reuleaux()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def record(n, ok, detail):
    ACCEPTANCE_LINES[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE_LINES[n])
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
