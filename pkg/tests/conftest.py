import pytest

_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_KEY] = []


@pytest.fixture
def record_criterion(request):
    """Store ``(label, passed, detail)`` for the end-of-run acceptance summary."""
    rows = request.config.stash[_KEY]

    def record(label, passed, detail=""):
        rows.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = config.stash.get(_KEY, [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(rows, key=lambda r: int(r[0][1:].split()[0])):
        terminalreporter.write_line(f"{label}: {'PASS' if passed else 'FAIL'}  {detail}")
