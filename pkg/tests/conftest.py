import functools

import pytest

from star_ics.oracle import bfs


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False, help="run the n=9 oracle comparisons too")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")
    config.addinivalue_line("markers", "deep: only runs with --deep")
    config._criteria = {}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--deep"):
        return
    skip = pytest.mark.skip(reason="needs --deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = item.config._criteria.setdefault(number, {"title": title, "passed": 0, "failed": [], "skipped": 0})
    if rep.when == "call" or rep.failed:
        if rep.failed:
            entry["failed"].append(item.name)
        elif rep.skipped:
            entry["skipped"] += 1
        elif rep.when == "call":
            entry["passed"] += 1
    elif rep.skipped and rep.when == "setup":
        entry["skipped"] += 1


def pytest_terminal_summary(terminalreporter, config):
    criteria = config._criteria
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria):
        e = criteria[number]
        status = "FAIL" if e["failed"] else ("PASS" if e["passed"] else "SKIP")
        note = f"{e['passed']} passed"
        if e["failed"]:
            note += f", {len(e['failed'])} failed ({', '.join(e['failed'])})"
        if e["skipped"]:
            note += f", {e['skipped']} skipped"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {e['title']}  [{note}]")


@functools.lru_cache(maxsize=None)
def _bfs(n):
    return bfs(n)


@pytest.fixture(scope="session")
def oracle_bfs():
    return _bfs
