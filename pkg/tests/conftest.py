import os
import re

import pytest
from hypothesis import HealthCheck, settings

from mackey.finite_group import builtin_group

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("ci", deadline=None, max_examples=20,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TEST_GROUPS = ["C1", "C2", "C3", "C2xC2", "S3"]


@pytest.fixture(params=TEST_GROUPS)
def group(request):
    return builtin_group(request.param)


@pytest.fixture
def c2():
    return builtin_group("C2")


@pytest.fixture
def c3():
    return builtin_group("C3")


@pytest.fixture
def s3():
    return builtin_group("S3")


# one PASS/FAIL line per acceptance criterion at the end of the run

_criteria: dict = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok = report.outcome == "passed"
        _criteria[n] = _criteria.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _criteria[n] else 'FAIL'}")
