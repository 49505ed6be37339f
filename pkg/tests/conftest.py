from fractions import Fraction as F

import pytest


@pytest.fixture(scope="session")
def hankel_scans():
    """Exact Hankel scans of the tilde Fuss-Narayana moments, computed once per session."""
    from smb.moments import scan_fuss_narayana

    cache = {}

    def get(s, t, max_order):
        key = (F(s), F(t), max_order)
        if key not in cache:
            cache[key] = scan_fuss_narayana(F(s), F(t), max_order)
        return cache[key]

    return get


ACCEPTANCE_LINES = {}


@pytest.fixture
def report_criterion():
    """Record one ``criterion N: PASS/FAIL`` line, then assert the outcome."""

    def record(n, ok, detail):
        ACCEPTANCE_LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
        print(ACCEPTANCE_LINES[n])
        assert ok, ACCEPTANCE_LINES[n]

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
