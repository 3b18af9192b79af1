import numpy as np
import pytest
from fractions import Fraction

from suphase.algebra import RootLabel, enumerate_basis
from suphase.errors import FitError, InvalidRepresentationError, NotUnitaryError
from suphase.phase import (DEFAULT_ROOTS, decay_fit, formula_su3, formula_su4, formula_value,
                           group_commutator, noncommutativity_norm, phase_operator, sweep)


def test_formulas():
    assert formula_su3(1) == 2
    assert formula_su3(2) == Fraction(5, 3)
    assert formula_su4(1) == Fraction(9, 4)
    with pytest.raises(InvalidRepresentationError):
        formula_su3(-1)


def test_formula_value_only_for_default_pair():
    assert formula_value(3, 2, *DEFAULT_ROOTS) == Fraction(5, 3)
    assert formula_value(3, 2, DEFAULT_ROOTS[1], DEFAULT_ROOTS[0]) == Fraction(5, 3)
    assert formula_value(3, 2, RootLabel(1, 2), RootLabel(2, 3)) is None
    assert formula_value(5, 2, *DEFAULT_ROOTS) is None


@pytest.mark.parametrize("lam", range(1, 11))
def test_su3_matches_formula(lam):
    report = noncommutativity_norm(3, lam)
    assert report.dimension == (lam + 1) * (lam + 2) // 2
    assert report.difference == pytest.approx(0.0, abs=1e-9)
    assert report.raw_norm == pytest.approx(2 * (report.dimension - report.fixed_point_count))
    assert report.trace_identity_residual < 1e-10
    assert report.convention == "su2-invariant-plus"


def test_su3_spot_values():
    assert noncommutativity_norm(3, 1).normalized_norm == pytest.approx(2.0)
    assert noncommutativity_norm(3, 2).normalized_norm == pytest.approx(5 / 3)
    assert noncommutativity_norm(3, 1).fixed_point_count == 0
    assert noncommutativity_norm(3, 2).fixed_point_count == 1
    assert noncommutativity_norm(3, 0).raw_norm == 0.0


@pytest.mark.parametrize("lam", [1, 2, 3])
def test_su4_brute_force(lam):
    report = noncommutativity_norm(4, lam)
    assert report.normalized_norm == pytest.approx(12 * lam / ((lam + 1) * (lam + 3)))
    assert report.formula_value == formula_su4(lam)


def test_su4_differs_from_formula_at_one():
    report = noncommutativity_norm(4, 1)
    assert report.raw_norm == pytest.approx(6.0)
    assert report.difference == pytest.approx(1.5 - 2.25)


def test_paper_sign_keeps_trace_identity():
    report = noncommutativity_norm(3, 3, convention="paper-sign")
    assert report.trace_identity_residual < 1e-10
    assert report.convention == "su2-invariant-paper-sign"


def test_complementary_pair_commutes():
    report = noncommutativity_norm(3, 1, convention="complementary")
    assert report.raw_norm == pytest.approx(0.0, abs=1e-20)
    with pytest.raises(InvalidRepresentationError):
        noncommutativity_norm(3, 2, convention="complementary")


def test_group_commutator_needs_unitary():
    with pytest.raises(NotUnitaryError):
        group_commutator(np.eye(2), np.array([[0, 1], [0, 0]]))
    with pytest.raises(InvalidRepresentationError):
        group_commutator(np.eye(2), np.eye(3))
    with pytest.raises(NotUnitaryError):
        phase_operator(enumerate_basis(3, 2), RootLabel(1, 2), "raw-partial")


class TestSweep:
    def test_ordered_and_thread_independent(self):
        single = sweep(3, 1, 6)
        threaded = sweep(3, 1, 6, threads=3)
        assert [r.lam for r in single] == list(range(1, 7))
        assert single == threaded

    @pytest.mark.parametrize("lam_min, lam_max, threads", [(5, 4, 1), (-1, 2, 1), (1, 2, 0)])
    def test_invalid(self, lam_min, lam_max, threads):
        with pytest.raises(InvalidRepresentationError):
            sweep(3, lam_min, lam_max, threads=threads)


class TestDecayFit:
    def test_su3(self):
        assert decay_fit(sweep(3, 2, 8)) == pytest.approx(-1.0)

    def test_su4(self):
        reports = sweep(4, 2, 8)
        assert decay_fit(reports) == pytest.approx(-1.0)
        assert decay_fit(reports, method="loglog") < 0.0

    def test_too_few_points(self):
        with pytest.raises(FitError):
            decay_fit(sweep(3, 2, 4))

    def test_small_lambda_rejected(self):
        with pytest.raises(FitError):
            decay_fit(sweep(3, 1, 6))

    def test_unknown_method(self):
        with pytest.raises(FitError):
            decay_fit(sweep(3, 2, 6), method="spline")
