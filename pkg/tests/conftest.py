import pytest

from fermat_tiles import PrimeContext

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx5():
    return PrimeContext.create(5)


@pytest.fixture(scope="session")
def ctx7():
    return PrimeContext.create(7)


@pytest.fixture(scope="session")
def ctx13():
    return PrimeContext.create(13)


@pytest.fixture(scope="session")
def ctx17():
    return PrimeContext.create(17)


@pytest.fixture(scope="session")
def ctx97():
    return PrimeContext.create(97, 5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
