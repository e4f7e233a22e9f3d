import pytest

_outcomes: dict[str, list[tuple[int, str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _outcomes.setdefault("rows", []).append((number, title, status))


def pytest_terminal_summary(terminalreporter):
    rows = _outcomes.get("rows")
    if not rows:
        return
    by_criterion: dict[int, tuple[str, set[str]]] = {}
    for number, title, status in rows:
        by_criterion.setdefault(number, (title, set()))[1].add(status)
    terminalreporter.section("acceptance criteria")
    for number in sorted(by_criterion):
        title, statuses = by_criterion[number]
        status = "FAIL" if "FAIL" in statuses else ("PASS" if "PASS" in statuses else "SKIP")
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
