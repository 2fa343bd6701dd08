"""The twelve acceptance criteria, one test each; every test prints a pass/fail line."""

import pytest

from l1coh.checks import CRITERIA, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA), ids=[f"criterion_{k:02d}_{CRITERIA[k][0].replace(' ', '_')}" for k in sorted(CRITERIA)])
def test_criterion(k, capsys):
    result = run_criterion(k)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail
