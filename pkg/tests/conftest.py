from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

import re

_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(key)
        if prev != "FAIL":
            _CRITERIA[key] = "PASS" if report.outcome == "passed" else (
                "SKIP" if report.outcome == "skipped" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), verdict in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n:2d} {verdict}: {name}")
