"""Per-criterion summary for the acceptance suite.

Tests tagged ``@pytest.mark.acceptance(number, title)`` are grouped by number;
a criterion passes when every test carrying its number passed.  One line per
criterion is printed at the end of the run.
"""

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): test belongs to an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _RESULTS.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "tests": 0})
    if report.when == "call":
        entry["tests"] += 1
        entry["seconds"] += report.duration
    if report.failed or (report.when == "call" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        r = _RESULTS[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {r['title']}  ({r['tests']} tests, {r['seconds']:.1f}s)"
        )
