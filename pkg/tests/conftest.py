import pytest

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def criterion_log():
    """Collects one (criterion, passed, detail) line per acceptance check."""

    def record(name, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
