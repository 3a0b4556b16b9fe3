"""
Acceptance criteria, one test per criterion, each run at its stated size and
time budget. A PASS/FAIL line per criterion is printed and repeated in the
terminal summary.
"""

from __future__ import annotations

import pytest

from affine_schur.selftest import CHECKS, DEFAULT_SEED, run_check

# seconds allowed per criterion; None means no stated budget
BUDGETS = {"1": 60, "3": 600, "6": 300, "7": 120, "8": 600, "11": 60}

RESULTS: list[str] = []


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion-{c.key}" for c in CHECKS])
def test_criterion(check):
    result = run_check(check, DEFAULT_SEED)
    budget = BUDGETS.get(check.key)
    in_time = budget is None or result.seconds < budget
    verdict = "PASS" if result.passed and in_time else "FAIL"
    line = f"{verdict} criterion {check.key} ({check.title}): {result.detail} [{result.seconds:.1f}s"
    line += f" of {budget}s]" if budget else "]"
    RESULTS.append(line)
    print(line)
    assert result.passed, result.detail
    assert in_time, f"took {result.seconds:.1f}s, budget {budget}s"
