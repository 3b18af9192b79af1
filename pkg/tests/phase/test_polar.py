import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose, assert_array_equal

from suphase.algebra import RootLabel, enumerate_basis, generator_matrix, kernel_states, su2_strings
from suphase.errors import InvalidRepresentationError, NotUnitaryError
from suphase.phase import (Convention, as_convention, cartan_commutation_residual, d_identity_residuals,
                           numeric_kernel, phase_hermitian, polar_factors, positive_factor,
                           su2_invariant_completion, su2_shift_E)

E12_PAPER_SIGN = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]])
E23_PAPER_SIGN = np.array([[1, 0, 0], [0, 0, 1], [0, -1, 0]])
PHI12 = (np.pi / 2) * np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]])


@pytest.fixture()
def su3_fundamental():
    return enumerate_basis(3, 1)


def test_convention():
    assert as_convention("plus") is Convention.PLUS
    assert Convention.PAPER_SIGN.tag == "su2-invariant-paper-sign"
    assert Convention.COMPLEMENTARY.tag == "complementary"
    with pytest.raises(InvalidRepresentationError):
        as_convention("minus")


def test_positive_factor_sides(su3_fundamental):
    c12 = generator_matrix(su3_fundamental, 1, 2)
    assert_allclose(positive_factor(c12), np.diag([0, 1, 0]), atol=1e-15)
    assert_allclose(positive_factor(c12, side="left"), np.diag([1, 0, 0]), atol=1e-15)
    with pytest.raises(InvalidRepresentationError):
        positive_factor(c12, side="middle")


def test_numeric_kernel_matches_edge_states():
    basis = enumerate_basis(3, 3)
    for root in (RootLabel(1, 2), RootLabel(3, 1), RootLabel(2, 3)):
        assert numeric_kernel(generator_matrix(basis, root.i, root.j)) == kernel_states(basis, root)


def test_paper_sign_solutions(su3_fundamental):
    e12 = su2_invariant_completion(su3_fundamental, RootLabel(1, 2), Convention.PAPER_SIGN)
    e23 = su2_invariant_completion(su3_fundamental, RootLabel(2, 3), Convention.PAPER_SIGN)
    assert_array_equal(e12.entries, E12_PAPER_SIGN)
    assert_array_equal(e23.entries, E23_PAPER_SIGN)


def test_plus_solution(su3_fundamental):
    e12 = su2_invariant_completion(su3_fundamental, RootLabel(1, 2))
    assert_array_equal(e12.entries, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def test_plus_solution_symmetric_square():
    basis = enumerate_basis(3, 2)
    e12 = su2_invariant_completion(basis, RootLabel(1, 2)).entries
    images = {}
    for src in range(basis.dimension):
        dst = int(np.flatnonzero(e12[:, src])[0])
        images[basis.states[src].ket()] = basis.states[dst].ket()
    assert images == {
        "|020⟩": "|110⟩", "|110⟩": "|200⟩", "|200⟩": "|020⟩",
        "|011⟩": "|101⟩", "|101⟩": "|011⟩",
        "|002⟩": "|002⟩",
    }


@pytest.mark.parametrize("n, lam", [(3, 1), (3, 3), (4, 2), (5, 2)])
def test_conventions_share_support(n, lam):
    basis = enumerate_basis(n, lam)
    for root in (RootLabel(1, 2), RootLabel(3, 1), RootLabel(2, 3)):
        plus = su2_invariant_completion(basis, root, Convention.PLUS).entries
        paper = su2_invariant_completion(basis, root, Convention.PAPER_SIGN).entries
        assert_array_equal(np.abs(plus), np.abs(paper))


@pytest.mark.parametrize("convention, wrap", [("plus", 1), ("paper-sign", -1)])
@pytest.mark.parametrize("n, lam", [(3, 2), (3, 5), (4, 3)])
def test_power_on_string(convention, wrap, n, lam):
    basis = enumerate_basis(n, lam)
    root = RootLabel(1, 2)
    e = su2_invariant_completion(basis, root, convention).entries
    for orbit in su2_strings(basis, root).orbits:
        block = np.linalg.matrix_power(e, len(orbit))[np.ix_(orbit, orbit)]
        sign = wrap if len(orbit) > 1 else 1
        assert_allclose(block, sign * np.eye(len(orbit)), atol=1e-15)


def test_completion_rejects_other_conventions(su3_fundamental):
    with pytest.raises(InvalidRepresentationError):
        su2_invariant_completion(su3_fundamental, RootLabel(1, 2), Convention.RAW_PARTIAL)
    with pytest.raises(InvalidRepresentationError):
        polar_factors(su3_fundamental, RootLabel(1, 2), Convention.COMPLEMENTARY)


@pytest.mark.parametrize("n, lam", [(3, 1), (3, 4), (4, 3), (2, 5)])
@pytest.mark.parametrize("convention", ["plus", "paper-sign"])
def test_polar_factors(n, lam, convention):
    basis = enumerate_basis(n, lam)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            root = RootLabel(i, j)
            factors = polar_factors(basis, root, convention)
            c = generator_matrix(basis, i, j)
            assert factors.unitarity_residual < 1e-12
            assert factors.polar_residual(c) < 1e-12
            assert factors.kernel_dimension == len(kernel_states(basis, root))
            assert cartan_commutation_residual(basis, factors.D) < 1e-12


def test_raw_partial_is_not_unitary():
    factors = polar_factors(enumerate_basis(3, 2), RootLabel(1, 2), Convention.RAW_PARTIAL)
    assert factors.unitarity_residual > 0.5
    with pytest.raises(NotUnitaryError):
        phase_hermitian(factors.E)


def test_trivial_irrep():
    factors = polar_factors(enumerate_basis(3, 0), RootLabel(1, 2))
    assert_array_equal(factors.E.entries, [[1]])
    assert_array_equal(factors.D.entries, [[0]])
    assert_array_equal(phase_hermitian(factors.E), [[0]])


def test_phase_hermitian():
    phi = phase_hermitian(E12_PAPER_SIGN)
    assert_allclose(phi, PHI12, atol=1e-10)
    assert_allclose(scipy.linalg.expm(1j * phi), E12_PAPER_SIGN, atol=1e-10)


@pytest.mark.parametrize("j", ["1/2", 1, "7/2", 5])
def test_phase_hermitian_of_shift(j):
    e = su2_shift_E(j)
    phi = phase_hermitian(e)
    assert_allclose(phi, phi.conj().T)
    eigenphases = np.linalg.eigvalsh(phi)
    assert np.all(eigenphases > -np.pi) and np.all(eigenphases <= np.pi + 1e-12)


def test_su2_shift():
    assert_array_equal(su2_shift_E(1), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert_array_equal(su2_shift_E(0), [[1]])


@pytest.mark.parametrize("lam", range(0, 9, 2))
def test_d_identities(lam):
    basis = enumerate_basis(3, lam)
    left = d_identity_residuals(basis, side="left")
    right = d_identity_residuals(basis, side="right")
    assert set(left) == {"D12^2-D21^2", "D23^2-D32^2", "D13^2-D31^2"}
    assert max(left.values()) < 1e-12
    assert max(right.values()) < 1e-12


def test_d_identity_sign():
    basis = enumerate_basis(3, 1)
    d12 = positive_factor(generator_matrix(basis, 1, 2))
    d21 = positive_factor(generator_matrix(basis, 2, 1))
    assert_allclose(d12 @ d12 - d21 @ d21, np.diag([-1, 1, 0]), atol=1e-15)


def test_d_identities_need_su3():
    with pytest.raises(InvalidRepresentationError):
        d_identity_residuals(enumerate_basis(2, 2))
