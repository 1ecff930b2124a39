import pytest

from kntorus.config import TorusConfig
from kntorus.verify import SUITES, CheckResult, verify_suite


def test_all_suite_aggregates(cfg_square):
    per_suite = [verify_suite(name, cfg_square, 4) for name in SUITES]
    combined = verify_suite("all", cfg_square, 4)
    assert len(combined) == sum(len(batch) for batch in per_suite)
    assert all(isinstance(c, CheckResult) for c in combined)
    assert all(c.passed for c in combined)


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify_suite("bogus", TorusConfig(tau=1j, q=0.2))


def test_check_result_passed_property():
    good = CheckResult(name="x", status="pass", max_residual=0.0, tolerance=1.0)
    bad = CheckResult(name="x", status="fail", max_residual=2.0, tolerance=1.0)
    assert good.passed and not bad.passed


def test_suites_pass_generic_complex_q(cfg_generic):
    for name in ("differential", "basis", "cocycle"):
        results = verify_suite(name, cfg_generic, 5)
        failing = [c.name for c in results if not c.passed]
        assert not failing, failing
