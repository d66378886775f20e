import pytest

from kgaim.model import PotentialParams, ProblemSpec


@pytest.fixture
def spec3():
    return ProblemSpec(M=1.0, d=3, l=0)


@pytest.fixture
def kratzer_params():
    return PotentialParams(s1=1.0, v1=0.5, s2=0.5, v2=0.3)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance as acc

    if acc.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in acc.REPORT:
            terminalreporter.write_line(line)
