"""Acceptance criteria 1-8; each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
when output capture is on.
"""
from __future__ import annotations

import pytest

from quintic_cacti.verify import CRITERIA, run_verify

# wall-clock budgets in seconds
BUDGET = {1: 1.0, 2: 5.0, 7: 10.0, 8: 30.0}


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda k: f"criterion_{k}")
def test_criterion(number, capsys):
    report = run_verify(criteria=[number], seed=0)
    ok = report.criterion_passed(number)
    elapsed = report.timings[number]
    within = elapsed < BUDGET.get(number, 60.0)
    with capsys.disabled():
        status = "PASS" if ok and within else "FAIL"
        print(f"\n[{status}] criterion {number}: {CRITERIA[number]} ({elapsed:.2f}s)")
        for c in report.checks:
            if not c.passed:
                print(f"    failed: {c.name}: expected {c.expected!r}, got {c.actual!r}")
    assert ok, [c.to_dict() for c in report.checks if not c.passed]
    assert within, f"took {elapsed:.2f}s"
