from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

MU_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(3, 2))
EPS_GRID = ((1, 1), (1, -1), (-1, 1), (-1, -1))

mus = st.fractions(min_value=0, max_value=3, max_denominator=8)
grid_mus = st.sampled_from(MU_GRID)
signs = st.sampled_from((1, -1))

ACCEPTANCE_LINES = {}


def record_criterion(number, passed, detail):
    """Store and print one acceptance line; the summary lists them in order."""
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
