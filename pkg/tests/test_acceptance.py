"""Acceptance criteria 1-10, one test each.

Each test prints a single [PASS]/[FAIL] line; the lines are repeated in the
terminal summary. Run directly (python tests/test_acceptance.py) for the
lines alone.
"""

import sys

import pytest

from imprimitive import verify

RESULTS = {}


@pytest.mark.parametrize("number", sorted(verify.CRITERIA))
def test_criterion(number):
    res = verify.run_criterion(number, verify.config())
    RESULTS[number] = res.line()
    print(res.line())
    for c in res.checks:
        print(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    assert res.passed, res.line()


if __name__ == "__main__":
    results = verify.run_suite()
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
