import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines.items()):
        terminalreporter.write_line(line)
