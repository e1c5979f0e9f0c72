import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and item.function.__doc__:
        label = item.function.__doc__.strip()
        if report.when == "call" or report.failed:
            status = "PASS" if report.passed else "FAIL"
            if _criteria.get(item.nodeid, ("", "PASS"))[1] != "FAIL":
                _criteria[item.nodeid] = (label, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _criteria.values():
        terminalreporter.write_line(f"{status}  criterion {label}")
