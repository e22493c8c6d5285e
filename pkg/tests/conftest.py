import mpmath
import pytest

from rhwave import build_sieve, build_zero_table

mpmath.mp.dps = 30


@pytest.fixture(scope="session")
def table():
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def small_table():
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def zeros():
    return build_zero_table(1)


@pytest.fixture(scope="session")
def zeros10():
    return build_zero_table(10)


@pytest.fixture(scope="session")
def table_1e7():
    return build_sieve(10**7)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
