import pytest

from dgtaylor import VarContext


@pytest.fixture
def ctx():
    return VarContext(("x", "y", "z", "w"))


@pytest.fixture
def xy():
    return VarContext(("x", "y"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n][1])
