import pytest
from math import sqrt

from suphase.algebra import (OccupationState, RootLabel, basis_dimension, cartesian_embedding,
                             edge_overlap_count, enumerate_basis, kernel_states, root_vector,
                             su2_strings, weight_of, WeightVector)
from suphase.algebra.weightspace import SU3_FUNDAMENTAL_WEIGHTS, SU3_SIMPLE_ROOTS
from suphase.errors import InvalidRepresentationError


class TestEnumerateBasis:
    def test_fundamental_su3(self):
        basis = enumerate_basis(3, 1)
        assert [s.ket() for s in basis] == ['|100⟩', '|010⟩', '|001⟩']

    def test_decreasing_order(self):
        basis = enumerate_basis(3, 2)
        assert [s.occupations for s in basis] == [
            (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]

    @pytest.mark.parametrize("n, lam, dim", [(2, 3, 4), (3, 2, 6), (4, 2, 10), (4, 8, 165), (3, 0, 1)])
    def test_dimension(self, n, lam, dim):
        assert basis_dimension(n, lam) == dim
        assert enumerate_basis(n, lam).dimension == dim

    def test_position(self):
        basis = enumerate_basis(3, 2)
        assert basis.position((0, 2, 0)) == 3
        assert basis[3].occupations == (0, 2, 0)

    @pytest.mark.parametrize("n, lam", [(1, 1), (3, -1), (0, 0)])
    def test_invalid(self, n, lam):
        with pytest.raises(InvalidRepresentationError):
            enumerate_basis(n, lam)


def test_negative_occupation():
    with pytest.raises(InvalidRepresentationError):
        OccupationState((1, -1, 0))


def test_shifted():
    state = OccupationState((0, 2, 0))
    assert state.shifted(1, 2).occupations == (1, 1, 0)
    assert state[2] == 2
    assert state.total == 2


def test_weights_fundamental():
    weights = [weight_of(s).components for s in enumerate_basis(3, 1)]
    assert weights == [(1, 0), (-1, 1), (0, -1)]


def test_cartesian_embedding():
    x, y = cartesian_embedding(weight_of(OccupationState((1, 0, 0))))
    assert x == pytest.approx(1 / sqrt(2))
    assert y == pytest.approx(1 / sqrt(6))
    assert cartesian_embedding(WeightVector((0, 0))) == (0.0, 0.0)


@pytest.mark.parametrize("i", [0, 1])
@pytest.mark.parametrize("j", [0, 1])
def test_fundamental_weights_dual_to_simple_roots(i, j):
    w = SU3_FUNDAMENTAL_WEIGHTS[i]
    alpha = SU3_SIMPLE_ROOTS[j]
    assert w[0] * alpha[0] + w[1] * alpha[1] == pytest.approx(1.0 if i == j else 0.0, abs=1e-15)


@pytest.mark.parametrize("root, index", [((1, 2), 0), ((2, 3), 1)])
def test_simple_root_embedding(root, index):
    x, y = cartesian_embedding(root_vector(RootLabel(*root), 3))
    assert x == pytest.approx(SU3_SIMPLE_ROOTS[index][0], abs=1e-15)
    assert y == pytest.approx(SU3_SIMPLE_ROOTS[index][1], abs=1e-15)


def test_root_vector():
    assert root_vector(RootLabel(1, 2), 3).components == (2, -1)
    assert root_vector(RootLabel(2, 3), 3).components == (-1, 2)
    assert root_vector(RootLabel(1, 3), 3).components == (1, 1)
    assert root_vector(RootLabel(3, 1), 3).components == (-1, -1)


class TestRootLabel:
    def test_parse(self):
        assert RootLabel.parse("1,2") == RootLabel(1, 2)
        assert str(RootLabel(3, 1)) == "3,1"
        assert RootLabel(1, 2).reverse == RootLabel(2, 1)

    @pytest.mark.parametrize("text", ["12", "1,", "a,b", "1,2,3"])
    def test_parse_invalid(self, text):
        with pytest.raises(InvalidRepresentationError):
            RootLabel.parse(text)

    def test_equal_indices(self):
        with pytest.raises(InvalidRepresentationError):
            RootLabel(2, 2)

    def test_out_of_range(self):
        with pytest.raises(InvalidRepresentationError):
            RootLabel(1, 4).validate(3)


def test_su2_strings():
    partition = su2_strings(enumerate_basis(3, 1), RootLabel(1, 2))
    assert set(partition.orbits) == {(1, 0), (2,)}

    partition = su2_strings(enumerate_basis(3, 2), RootLabel(1, 2))
    assert sorted(partition.lengths) == [1, 2, 3]
    # ordered by increasing n_1: |020>, |110>, |200>
    assert (3, 1, 0) in partition.orbits


@pytest.mark.parametrize("n, root, orbits", [
    (3, (1, 2), {(1, 0), (2,)}),
    # |1000>, |0010> share n2 = n4 = 0
    (4, (3, 1), {(0, 2), (1,), (3,)}),
])
def test_su2_strings_fundamental(n, root, orbits):
    partition = su2_strings(enumerate_basis(n, 1), RootLabel(*root))
    assert set(partition.orbits) == orbits


@pytest.mark.parametrize("lam", range(7))
def test_su3_kernels_share_one_state(lam):
    basis = enumerate_basis(3, lam)
    kernel_a = set(kernel_states(basis, RootLabel(1, 2)))
    kernel_b = set(kernel_states(basis, RootLabel(3, 1)))
    assert len(kernel_a) == len(kernel_b) == lam + 1
    assert len(kernel_a & kernel_b) == 1


@pytest.mark.parametrize("lam", range(6))
def test_su4_edge_size(lam):
    basis = enumerate_basis(4, lam)
    assert len(kernel_states(basis, RootLabel(1, 2))) == (lam + 1) * (lam + 2) // 2


def test_kernel_states():
    assert kernel_states(enumerate_basis(3, 1), RootLabel(1, 2)) == [0, 2]
    assert kernel_states(enumerate_basis(3, 2), RootLabel(3, 1)) == [3, 4, 5]


@pytest.mark.parametrize("n, lam, expected", [
    (3, 0, (1, 1, 1, 1)),
    (3, 1, (2, 2, 1, 3)),
    (3, 2, (3, 3, 1, 5)),
    (4, 1, (3, 3, 2, 4)),
])
def test_edge_overlap_count(n, lam, expected):
    overlap = edge_overlap_count(enumerate_basis(n, lam), RootLabel(1, 2), RootLabel(3, 1))
    assert overlap == expected


def test_edge_overlap_same_root():
    with pytest.raises(InvalidRepresentationError):
        edge_overlap_count(enumerate_basis(3, 1), RootLabel(1, 2), RootLabel(1, 2))
