import pytest

_REPORT: list[str] = []


@pytest.fixture
def report():
    """Record a line for the end-of-run summary (shown without -s)."""
    def add(line: str) -> None:
        print(line)
        _REPORT.append(line)
    return add


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance report")
        for line in _REPORT:
            terminalreporter.write_line(line)
