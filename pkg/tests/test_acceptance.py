"""Acceptance criteria, each run at its stated tolerance.

Every criterion prints one ``[PASS]``/``[FAIL]`` line; the lines are also
repeated in the terminal summary (see ``conftest.py``).
"""

from __future__ import annotations

import pytest

from qbtriple.suite import CRITERIA, run_criterion

RESULTS: list = []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    res = run_criterion(number, seed=0)
    RESULTS.append(res)
    print(res.line())
    assert res.passed, f"criterion {number} failed: {res.details}"
