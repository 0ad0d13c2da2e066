import math

import numpy as np
import pytest
from hypothesis import strategies as st

from xdiscord.xmatrix import ComplexXState, RealXState


def random_real_states(rng, n, slack=1.0):
    """Canonical X states: Dirichlet populations, off-diagonals up to ``slack`` times the bound."""
    pops = rng.dirichlet(np.ones(4), size=n)
    fu, fv = rng.uniform(0, slack, size=(2, n))
    out = []
    for (a, b, c, d), x, y in zip(pops, fu, fv):
        out.append(RealXState(a, b, c, d, x * math.sqrt(a * d), y * math.sqrt(b * c)))
    return out


@st.composite
def real_states(draw, slack=1.0):
    w = [draw(st.floats(0.01, 1.0)) for _ in range(4)]
    t = sum(w)
    a, b, c, d = (x / t for x in w)
    fu = draw(st.floats(0.0, slack))
    fv = draw(st.floats(0.0, slack))
    return RealXState(a, b, c, d, fu * math.sqrt(a * d), fv * math.sqrt(b * c))


@st.composite
def complex_states(draw):
    base = draw(real_states())
    pu = draw(st.floats(-math.pi, math.pi))
    pv = draw(st.floats(-math.pi, math.pi))
    return ComplexXState(
        base.a, base.b, base.c, base.d,
        base.u * math.cos(pu), base.u * math.sin(pu),
        base.v * math.cos(pv), base.v * math.sin(pv),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


# --- acceptance report -------------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): numbered acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, text = mark.args
    passed = call.excinfo is None
    prev = _criteria.get(n, (True, text))[0]
    _criteria[n] = (prev and passed, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}")
