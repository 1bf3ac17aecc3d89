"""The acceptance gate: one test per criterion, at its stated tolerance.

Run with -s to see the pass/fail table; the same registry backs the
CLI `verify` subcommand.
"""

import pytest

from polypol.acceptance import CRITERIA, run_criterion
from polypol.config import DEFAULT


@pytest.mark.parametrize("cid,name", [(c, n) for c, n, _ in CRITERIA],
                         ids=[f"criterion_{c:02d}" for c, _, _ in CRITERIA])
def test_acceptance_criterion(cid, name):
    result = run_criterion(cid, DEFAULT)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {cid:>2} {name}: {result.detail} ({result.seconds:.1f}s)")
    assert result.passed, f"criterion {cid} ({name}): {result.detail}"
