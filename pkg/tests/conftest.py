import pytest


def pytest_terminal_summary(terminalreporter):
    lines = getattr(pytest, "acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
