import math

import pytest
from hypothesis import strategies as st

from origami_sym.numeric import RationalPi, RealAngle

P6M = (RationalPi(0), RationalPi(1, 3), RationalPi(2, 3))
CMM = (RationalPi(0), RationalPi(1, 4), RationalPi(1, 2))
P2 = (RationalPi(0), RealAngle(math.asin(2 * math.sqrt(5) / 5)), RationalPi(1, 2))
P6_SIX = tuple(RationalPi(n, d) for n, d in ((0, 1), (1, 4), (1, 3), (7, 12), (2, 3), (11, 12)))

rational_angles = st.builds(RationalPi, st.integers(-40, 40), st.integers(1, 24))
real_angles = st.builds(RealAngle, st.floats(-10, 10, allow_nan=False, allow_infinity=False))
angles = st.one_of(rational_angles, real_angles)


@st.composite
def triples(draw):
    """Three well-separated directions containing 0."""
    a = draw(st.floats(0.15, math.pi - 0.3))
    b = draw(st.floats(a + 0.15, math.pi - 0.15))
    return (RationalPi(0), RealAngle(a), RealAngle(b))


# -- acceptance report -----------------------------------------------------------
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def _report(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
