"""Acceptance criteria 1-10.

Each test records one line ``criterion N: PASS|FAIL  <title>``; pytest
prints them in an "acceptance criteria" section at the end of the run, and
``python3 tests/test_acceptance.py`` prints the bare listing.
"""

import json
import sys

import pytest

from skewinv.checks import CRITERIA, run_criterion


def _line(res) -> str:
    return f"criterion {res.number}: {'PASS' if res.passed else 'FAIL'}  {res.title} ({res.seconds:.2f}s)"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    res = run_criterion(number)
    acceptance_log.append(_line(res))
    assert res.passed, json.dumps(res.details, default=str)[:2000]


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for r in results:
        print(_line(r))
    sys.exit(0 if all(r.passed for r in results) else 1)
