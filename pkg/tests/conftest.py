import pytest

from wgraphalg.coxeter import parse_coxeter

_CRITERIA = {}
_DETAILS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.fixture
def detail(request):
    """Attach a one-line note to the acceptance summary for this test."""
    def note(text):
        _DETAILS[request.node.nodeid] = text
    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    n = marker.args[0]
    if rep.when == "setup" and rep.passed:
        return
    ok = rep.passed
    _CRITERIA[n] = _CRITERIA.get(n, True) and ok
    if item.nodeid in _DETAILS:
        _DETAILS.setdefault(("criterion", n), []).append(_DETAILS[item.nodeid])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        notes = "; ".join(_DETAILS.get(("criterion", n), []))
        status = "PASS" if _CRITERIA[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}" + (f" ({notes})" if notes else ""))


@pytest.fixture(scope="session")
def cox():
    return parse_coxeter
