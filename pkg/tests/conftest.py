"""Shared test fixtures, including the acceptance-criterion reporter.

Acceptance tests call ``criterion(name, ok, detail)`` before asserting, so
the end-of-run summary always shows one PASS/FAIL line per criterion even
when an assertion stops the test early.
"""

import pytest

_criterion_lines: list[str] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] {name}"
    if detail:
        line += f": {detail}"
    _criterion_lines.append(line)


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in _criterion_lines:
        terminalreporter.write_line(line)
