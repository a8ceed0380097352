import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from scarfkit.dist import make_discrete


@pytest.fixture
def rng():
    return np.random.default_rng(20231)


@st.composite
def discrete(draw, max_atoms=6, lo=-5.0, hi=5.0, lattice=False):
    k = draw(st.integers(1, max_atoms))
    if lattice:
        pts = [draw(st.integers(int(lo * 4), int(hi * 4))) / 4 for _ in range(k)]
    else:
        pts = [draw(st.floats(lo, hi, allow_nan=False)) for _ in range(k)]
    w = [draw(st.floats(0.01, 1.0)) for _ in range(k)]
    return make_discrete(pts, w)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
