import pytest

from gorenstein import cache


@pytest.fixture(autouse=True)
def _no_disk_cache():
    cache.disable()
    yield
    cache.disable()


@pytest.fixture(params=["gf2", "q"])
def field(request):
    return request.param


_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        status = "PASS" if rep.passed else ("SKIPPED" if rep.skipped else "FAIL")
        _criteria[number] = (status, title)


def pytest_collection_modifyitems(config, items):
    # criteria deselected by the marker expression still get a line
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria.setdefault(mark.args[0], ("NOT RUN", mark.args[1]))


def pytest_deselected(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria[mark.args[0]] = ("DESELECTED", mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status:<10} {title}")
