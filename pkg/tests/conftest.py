import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mods = [m for name, m in sys.modules.items() if name.split(".")[-1] == "test_acceptance"]
    RESULTS = [line for m in mods for line in getattr(m, "RESULTS", [])]
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
