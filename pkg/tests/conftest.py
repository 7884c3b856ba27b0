import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERION_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERION_LINES):
        terminalreporter.write_line(CRITERION_LINES[k])
