import sys

import pytest

from noncong.frobchar import char_poly, factor_over_quadratic

_RECORDS = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance-criterion verdict lines after the test run."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def frob():
    """Memoized (record, factor, discriminant) per (p, a); counting is slow."""

    def get(p, a):
        key = (p, a)
        if key not in _RECORDS:
            rec = char_poly(p, a)
            g, D = factor_over_quadratic(rec)
            _RECORDS[key] = (rec, g, D)
        return _RECORDS[key]

    return get
