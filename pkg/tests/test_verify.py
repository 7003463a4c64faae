"""Unit tests for pipeline.verify."""
import pytest

from geometry.errors import UnknownScopeError
from pipeline.verify import CHECKS, SCOPES, Check, CheckResult, VerifyResult, run_checks


def test_every_scope_has_checks():
    assert {c.scope for c in CHECKS} == set(SCOPES)


def test_every_check_carries_a_citation():
    assert len(CHECKS) == 20
    assert all(c.citation.strip() for c in CHECKS)


def test_citations_name_their_results():
    cited = {c.label: c.citation for c in CHECKS}
    assert cited["Ricci displays of gamma2, model3d and family4a"].startswith("Def 1.10")
    assert cited["equivariance exponent for m = 2, 3"] == "Lemma 2.1(2)"
    assert cited["exceptional groups close and fix their structures"] == "Thm 1.12(3a), (3b)"
    assert cited["non-compact witnesses reach every signature"] == "§5"


@pytest.mark.parametrize("scope", ["tensor-core", "curvature", "catalog", "cli"])
def test_scope_passes(scope):
    result = run_checks(scope, seed=7)
    assert result.results
    assert all(r.scope == scope for r in result.results)
    assert result.passed, "\n".join(result.ledger())


def test_ledger_lines():
    result = run_checks("tensor-core", seed=0)
    assert all(line.startswith("✓ PASS [tensor-core] ") for line in result.ledger())
    assert "✓ PASS [tensor-core] basis change is a right action (§1.5): max error" in result.ledger()[0]


def test_unknown_scope():
    with pytest.raises(UnknownScopeError, match="nosuch"):
        run_checks("nosuch")


def test_failing_check_is_reported(monkeypatch):
    def explode(rng):
        raise RuntimeError("boom")

    monkeypatch.setattr("pipeline.verify.CHECKS", [Check("cli", "always fails", "§0", explode)])
    result = run_checks("all")
    assert not result.passed
    assert result.ledger() == ["✗ FAIL [cli] always fails (§0): RuntimeError: boom"]


def test_verify_result_passed():
    ok = CheckResult("cli", "x", "§1", True, "")
    bad = CheckResult("cli", "y", "§1", False, "")
    assert VerifyResult([ok]).passed
    assert not VerifyResult([ok, bad]).passed
