import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# JIT compilation makes first calls slow; wall-clock deadlines would flake.
settings.register_profile("rootsplit", deadline=None)
settings.load_profile("rootsplit")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, with the measured numbers."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "_PASS_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
