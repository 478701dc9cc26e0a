import pytest

from quasicommit import GALI2015, slope_kappa


@pytest.fixture
def gali():
    return GALI2015


@pytest.fixture
def rf(gali):
    return slope_kappa(gali)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
