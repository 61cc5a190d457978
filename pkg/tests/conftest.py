import pytest

_LINES = {}


@pytest.fixture
def acceptance():
    """Record ``(key, passed, text)``; the lines are printed after the run."""

    def record(key, title, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {key} {title}: {detail}"
        _LINES[key] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_LINES, key=lambda k: int(k[2:])):
        terminalreporter.write_line(_LINES[key])
