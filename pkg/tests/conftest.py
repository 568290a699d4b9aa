from fractions import Fraction

import pytest
from hypothesis import settings

from koornwinder_asep.ansatz import ParamPoint, random_points

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def points():
    return random_points(11, 3)


@pytest.fixture(scope="session")
def point():
    return ParamPoint(Fraction(1, 2), Fraction(1, 3), Fraction(-1, 5), Fraction(1, 7),
                      Fraction(1, 4))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
