import pytest

from dense_ee import HardwareParams, PropagationParams

# acceptance verdicts, printed together at the end of the session
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def prop():
    return PropagationParams()


@pytest.fixture
def hw():
    return HardwareParams()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
