import pytest

from aprimes import count_a_sieve
from aprimes.sieve import primes_up_to


@pytest.fixture(scope="session")
def members_1e6():
    return count_a_sieve(10**6, members=True).members


@pytest.fixture(scope="session")
def prime_set_1e4():
    return set(primes_up_to(10**4).tolist())


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for name, value in report.user_properties:
        if name == "acceptance":
            status = "PASS" if report.passed else "FAIL"
            if report.passed and value.startswith("SOFT-FAIL"):
                status, value = "SOFT-FAIL", value[len("SOFT-FAIL "):]
            _ACCEPTANCE.append(f"[{status}] {value}")


_ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
