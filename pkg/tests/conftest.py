import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lbcteach import gen_diamond, optimal_teach  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def diamond6():
    return gen_diamond(6)


@pytest.fixture(scope="session")
def diamond6_exact(diamond6):
    return optimal_teach(diamond6, "exact")


@pytest.fixture
def report():
    """Record one PASS/FAIL line for the acceptance summary."""
    def _report(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
