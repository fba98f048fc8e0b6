"""Collects one pass/fail line per acceptance criterion and prints them at the end."""
import pytest

_RESULTS: dict[int, tuple[bool, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.skipped:
        return
    if rep.when == "call" or rep.failed:
        number, title = marker.args
        detail = dict(item.user_properties).get("detail", "")
        previous = _RESULTS.get(number)
        ok = rep.passed and (previous is None or previous[0])
        _RESULTS[number] = (ok, title, detail if ok else (str(rep.longrepr).splitlines() or [""])[-1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, title, detail = _RESULTS[number]
        line = f"ACCEPTANCE [{'PASS' if ok else 'FAIL'}] {number:2d} {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
