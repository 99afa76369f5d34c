import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance_record():
    """Record ``(criterion, passed, summary)`` for the end-of-run acceptance table."""

    def record(criterion: int, passed: bool, summary: str) -> None:
        _ACCEPTANCE[criterion] = (passed, summary)
        print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} - {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_ACCEPTANCE):
        passed, summary = _ACCEPTANCE[criterion]
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {summary}")
