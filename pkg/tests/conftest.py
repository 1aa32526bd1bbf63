"""Shared fixtures and the acceptance-criteria summary printer."""

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_recorder():
    def record(criterion: str, passed: bool, detail: str = "") -> None:
        mark = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        _ACCEPTANCE_LINES.append(f"[{mark}] {criterion}{suffix}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
