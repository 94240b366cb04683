import pytest

from isonlcs.fockspace import TruncatedBasis
from isonlcs.witnesses import Ladders


@pytest.fixture(scope="session")
def basis():
    return TruncatedBasis(200)


@pytest.fixture(scope="session")
def small_basis():
    return TruncatedBasis(40)


@pytest.fixture(scope="session")
def ladders(basis):
    return Ladders.build(basis)


def pytest_terminal_summary(terminalreporter):
    import sys

    lines = [ln for mod in list(sys.modules.values()) for ln in getattr(mod, "ACCEPTANCE_LINES", [])]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda ln: int(ln.split()[2])):
            terminalreporter.write_line(line)
