import pytest

# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def record():
    def _record(criterion, passed, detail=""):
        ACCEPTANCE.append((criterion, bool(passed), detail))
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
