import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def record(request):
    """Log one acceptance line: record(number, title, passed, detail)."""

    def _record(number, title, passed, detail=""):
        request.config.stash[_RESULTS].append((number, title, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(_RESULTS, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(rows):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}: {detail}")
