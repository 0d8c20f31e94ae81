"""Acceptance gate: every criterion at its stated tolerance, one line each."""

import pytest

from sectorbalance.verify import run_checks

CRITERIA = [
    (1, "oracle_equivalence"),
    (2, "total_area_identity"),
    (3, "opposite_pair_identity"),
    (4, "centered_conditions"),
    (5, "pizza_cancellation"),
    (6, "four_sector_axis_balance"),
    (7, "six_sector_erratum_audit"),
    (8, "solver_soundness"),
    (9, "output_determinism"),
]


@pytest.fixture(scope="module")
def results():
    checks = run_checks(seed=0, trials=1000, poles=100, solver_trials=50,
                        mc_samples=1_000_000)
    return {check.name: check for check in checks}


@pytest.mark.parametrize("number,name", CRITERIA)
def test_criterion(results, number, name):
    check = results[name]
    status = "PASS" if check.passed else "FAIL"
    print(f"{status} criterion {number} ({name}): {check.detail}")
    assert check.passed, f"criterion {number} ({name}): {check.detail}"
