"""Shared pytest glue: a registry of acceptance-gate results.

Gate tests record one PASS/FAIL line with their measured numbers; the lines
print in a dedicated section after the normal test report so the outcome of
every gate is visible even though pytest captures stdout of passing tests.
"""

ACCEPTANCE_LINES = []


def record(name: str, ok: bool, detail: str) -> bool:
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance gates")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
