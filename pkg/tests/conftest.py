import pytest

CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


@pytest.fixture
def criterion():
    """``criterion(name, ok, detail)`` logs the outcome, then asserts it."""

    def check(name, ok, detail):
        ok = bool(ok)
        CRITERIA.append((name, ok, detail))
        assert ok, f"{name}: {detail}"

    return check
