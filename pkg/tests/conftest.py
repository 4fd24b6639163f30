import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    results = item.config._criteria
    ok = results.get(number, (title, True))[1]
    # a criterion passes only if every phase of every test carrying it passed
    if rep.failed or (rep.when == "call" and rep.outcome != "passed"):
        ok = False
    results[number] = (title, ok)


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_criteria", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok = results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}")
