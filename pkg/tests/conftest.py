import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# criterion id -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key}: {'PASS' if ok else 'FAIL'}  {detail}")
