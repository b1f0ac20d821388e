"""Acceptance gate: every check in the built-in suite must pass, one line
of output per check (run with -s or -v to watch them go by)."""

import pytest

from formalbrauer.acceptance import CHECKS, run_checks


@pytest.mark.parametrize("name", list(CHECKS))
def test_acceptance(name):
    outcome = run_checks([name], profile="default")[0]
    status = "PASS" if outcome.ok else "FAIL"
    print(f"{status} {outcome.name} ({outcome.seconds:.2f}s): {outcome.detail}")
    assert outcome.ok, f"{outcome.name}: {outcome.detail}"
