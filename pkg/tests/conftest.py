import math

import pytest

from weakshanks.moments import FunctionParams

SQRT6 = math.sqrt(6.0)
# (alpha, r) pairs quoted as counterexamples in the literature
COUNTEREXAMPLES = [(2.5, SQRT6), (2.0, 2.1), (3.0, 3.0)]
OPTIMUM = FunctionParams(2.551918826591946, 2.533672086469380)
OPTIMAL_QUOTIENT = 0.975766335259681

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_report():
    """Append one summary line per acceptance criterion."""
    return _acceptance_lines.append


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
