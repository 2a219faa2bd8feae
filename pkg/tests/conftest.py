import pytest
from hypothesis import HealthCheck, settings

from linset.field import make_field

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

_CRITERIA: dict[int, str] = {}


@pytest.fixture(scope="session")
def F64():
    return make_field(2, 1, 6)


@pytest.fixture(scope="session")
def F32():
    return make_field(2, 1, 5)


@pytest.fixture(scope="session")
def F81():
    return make_field(3, 1, 4)


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    number = int(name.split("_")[2])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {number:2d}: {_CRITERIA[number]}")
