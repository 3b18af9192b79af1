import pytest

from suphase.config import load_tolerances
from suphase import verification
from suphase.errors import CompletionError, InvalidRepresentationError
from suphase.phase import dft_eigensystem
from suphase.verification import run_suite


def _failures(checks):
    return [(c.name, c.residual, c.tolerance, c.message) for c in checks if not c.passed]


def test_pauli_suite():
    checks = run_suite("pauli")
    assert _failures(checks) == []
    relations = [c for c in checks if c.name.startswith("pauli_relation")]
    assert len(relations) == 9


@pytest.mark.parametrize("suite", ["su2", "su3", "su4", "gamma"])
def test_suites_pass(suite):
    checks = run_suite(suite)
    assert checks
    assert {c.suite for c in checks} == {suite}
    assert _failures(checks) == []


def test_gamma_suite_reaches_spin_thirty():
    names = [c.name for c in run_suite("gamma")]
    assert "s_recursion[j=30]" in names
    assert "s_recursion[j=61/2]" not in names


def test_failure_is_reported():
    tolerances = load_tolerances()
    tolerances["pauli_order"] = -1.0
    checks = run_suite("pauli", tolerances)
    failed = [c for c in checks if not c.passed]
    assert [c.name for c in failed] == ["pauli_order[X^3=Z^3=1]"]


def test_unknown_suite():
    with pytest.raises(InvalidRepresentationError):
        run_suite("su5")


def test_deterministic():
    first = [c.to_dict() for c in run_suite("pauli")]
    second = [c.to_dict() for c in run_suite("pauli")]
    assert first == second


def test_added_checks_are_registered():
    pauli = [c.name for c in run_suite("pauli")]
    assert "completion_search[lambda=1]" in pauli
    assert len([n for n in pauli if n.startswith("common_eigenbasis")]) == 3
    gamma = [c.name for c in run_suite("gamma")]
    assert "su3_limit[lambda=30 window=2]" in gamma


def test_error_inside_identity_is_recorded(monkeypatch):
    def broken(basis, side):
        raise CompletionError("no D operators")

    monkeypatch.setattr(verification, "d_identity_residuals", broken)
    checks = run_suite("su3")
    failed = [c for c in checks if not c.passed]
    assert len(failed) == 9 * 2 * 3
    assert all(c.name.startswith("d_identity") for c in failed)
    assert all(c.residual == float("inf") and c.message == "no D operators" for c in failed)


def test_dft_eigensystem_built_once_per_spin(monkeypatch):
    calls = []

    def counting(e):
        calls.append(e.shape[0])
        return dft_eigensystem(e)

    monkeypatch.setattr(verification, "dft_eigensystem", counting)
    assert _failures(run_suite("su2")) == []
    assert calls == list(range(2, 22))
