import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from irt_lab.geometry import Point, PointSet

ACCEPTANCE_LINES: list[str] = []

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=6)
points = st.builds(Point, small_fractions, small_fractions)
# lattice-like sets so that IRTs actually occur
grid_points = st.builds(lambda i, j, d: Point(Fraction(i, d), Fraction(j, d)),
                        st.integers(-4, 4), st.integers(-4, 4), st.sampled_from([1, 2]))
point_sets = st.lists(grid_points, min_size=0, max_size=18).map(PointSet)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
