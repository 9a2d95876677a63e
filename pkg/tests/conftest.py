import pytest

from gameopt.core import GameContract, MarketParams


@pytest.fixture
def market():
    return MarketParams(spot=100.0, rate=0.03, vol=0.2)


@pytest.fixture
def contract():
    return GameContract(strike=100.0, maturity=1.0, penalty=10.0)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
