import pytest

_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        details = [v for k, v in item.user_properties if k == "detail"]
        _CRITERIA.append((marker.args[0], marker.kwargs.get("title", item.name), rep.outcome, details))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title, outcome, details in sorted(_CRITERIA):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        tr.write_line(f"criterion {number}: {verdict}  {title}")
        for d in details:
            tr.write_line(f"    {d}")
