"""Acceptance suite: runs the ten verification criteria and prints one
pass/fail line per criterion (visible even under output capture)."""

import pytest

from matchgates import selftest

_IDS = [f"criterion_{i}" for i in range(1, len(selftest.ALL_CRITERIA) + 1)]


@pytest.mark.parametrize(
    "fn", selftest.ALL_CRITERIA, ids=_IDS
)
def test_criterion(fn, capsys):
    result = fn()
    with capsys.disabled():
        print(flush=True)
        print(result.line(), flush=True)
    assert result.passed, f"criterion {result.index} failed: {result.detail}"
