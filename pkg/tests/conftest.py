import pytest

from ppinv.gf import FieldCtx

_acceptance = {}


@pytest.fixture(scope="session")
def gf3():
    return FieldCtx(3, 1)


@pytest.fixture(scope="session")
def gf9():
    return FieldCtx(3, 2)


@pytest.fixture(scope="session")
def gf27():
    return FieldCtx(3, 3)


@pytest.fixture(scope="session")
def gf81():
    return FieldCtx(3, 4)


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    number = int(report.nodeid.split(marker)[1].split("_")[0])
    if report.when == "call" or report.failed:
        prev = _acceptance.get(number, "PASS")
        _acceptance[number] = "FAIL" if (report.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        terminalreporter.write_line(f"criterion {number:2d}: {_acceptance[number]}")
