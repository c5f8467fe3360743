import sys
from fractions import Fraction

import pytest
from hypothesis import settings

from metricpair import MetricPair, SymForm

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile("ci")

MINK = SymForm(1, 0, -1)


def mk(gc, g=MINK):
    """Pair from nested lists (or SymForms), default g = diag(1, -1)."""
    if not isinstance(gc, SymForm):
        gc = SymForm.from_rows(gc)
    if not isinstance(g, SymForm):
        g = SymForm.from_rows(g)
    return MetricPair(g, gc)


def frac_rows(rows):
    return [[Fraction(x) for x in r] for r in rows]


@pytest.fixture
def mink():
    return MINK


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
