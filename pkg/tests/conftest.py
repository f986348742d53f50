import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    row = _criteria.setdefault(n, {"title": title, "status": "PASS", "detail": ""})
    if report.when == "call" or report.failed:
        if hasattr(report, "wasxfail"):
            row["status"] = "FAIL"
            row["detail"] = "known failure: " + report.wasxfail
        elif report.failed:
            row["status"] = "FAIL"
            row["detail"] = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
        elif report.skipped:
            row["status"] = "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        row = _criteria[n]
        line = f"criterion {n:2d} {row['status']:4s}  {row['title']}"
        if row["detail"]:
            line += f"  [{row['detail'].splitlines()[0][:160]}]"
        terminalreporter.write_line(line)
