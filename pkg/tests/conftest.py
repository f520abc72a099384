"""Collects ``@pytest.mark.criterion(n, text)`` outcomes and prints one line per criterion."""
import pytest

_RESULTS: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    entry = _RESULTS.setdefault(number, [text, True, False])
    if report.when == "call" or report.failed:
        entry[2] = True
        if report.failed:
            entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        text, ok, ran = _RESULTS[number]
        status = "PASS" if ok and ran else ("FAIL" if ran else "NOT RUN")
        terminalreporter.write_line(f"criterion {number}: {status} - {text}")
