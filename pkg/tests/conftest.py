"""Suite-wide pytest hooks.

The acceptance module registers one PASS/FAIL line per criterion; they are
echoed in the terminal summary so they survive output capture.
"""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_lines):
            terminalreporter.write_line(line)
