import pytest

from taugraph.domains import INTEGERS, QuadraticDomain, gapped_domain_for
from taugraph.factorization import Engine
from taugraph.tau import builtin

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def zz():
    return INTEGERS


@pytest.fixture(scope="session")
def q5():
    return QuadraticDomain(-5)


def ints(*ns):
    return [INTEGERS.element(n) for n in ns]


def gapped(*texts):
    return gapped_domain_for(list(texts))


def engine(name, params=None):
    return Engine(builtin(name, params))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
