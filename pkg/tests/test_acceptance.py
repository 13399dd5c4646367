"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line straight to the
terminal (capture is bypassed) and asserts the criterion at its stated
tolerance.
"""
import pytest

from gamowkit.acceptance import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i:02d}" for i in range(1, len(CHECKS) + 1)])
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
