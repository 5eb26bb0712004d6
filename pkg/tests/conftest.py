from fractions import Fraction

import pytest

from twofill.rectcomplex import buildComplex
from twofill.traintrack import buildT, buildT1, buildTStar, cyclicCover


@pytest.fixture(scope="session")
def T32():
    return buildT(32)


@pytest.fixture(scope="session")
def G32(T32):
    return buildComplex(*T32)


@pytest.fixture(scope="session")
def TS16():
    return buildTStar(16)


@pytest.fixture(scope="session")
def T1():
    return buildT1(10)


@pytest.fixture
def F():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
