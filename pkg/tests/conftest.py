import sys

import numpy as np
import pytest
from hypothesis import strategies as st

from intrinsic_spin import minkowski as mk

SQ2 = np.sqrt(2.0)

finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(finite, finite, finite)
rapidity3 = st.tuples(*[st.floats(min_value=-1.2, max_value=1.2, allow_nan=False)] * 3)
momentum3 = st.tuples(*[st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)] * 3)


@st.composite
def lorentz_matrices(draw):
    """Rotation times boost, both moderate."""
    axis = np.array(draw(vec3), dtype=float)
    if np.linalg.norm(axis) < 1e-3:
        axis = np.array([0.0, 0.0, 1.0])
    angle = draw(st.floats(min_value=-np.pi, max_value=np.pi, allow_nan=False))
    return mk.rotation(axis, angle) @ mk.boost(np.array(draw(rapidity3)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
