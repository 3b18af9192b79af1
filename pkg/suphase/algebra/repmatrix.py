"""Matrices of the su(n) generators C_ij = a_i† a_j and the Cartan operators
h_k = C_kk − C_{k+1,k+1} on an :class:`OrderedBasis`.
"""
import itertools
import logging
from math import sqrt
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
from dataclasses import dataclass

from ..errors import InvalidRepresentationError
from ..utils import as_spin, commutator, dagger, max_abs, spin_dimension
from .weightspace import OrderedBasis, RootLabel, enumerate_basis, root_vector, weight_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """Dense square complex matrix tagged with the basis it acts on."""
    entries: np.ndarray
    basis: Optional[OrderedBasis] = None

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidRepresentationError(f"square matrix required, got shape {arr.shape}")
        if self.basis is not None and self.basis.dimension != arr.shape[0]:
            raise InvalidRepresentationError(
                f"basis dimension {self.basis.dimension} != matrix dimension {arr.shape[0]}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None) -> np.ndarray:
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True, eq=False)
class GeneratorSet:
    basis: OrderedBasis
    ladders: Dict[Tuple[int, int], ComplexMatrix]
    cartans: Tuple[ComplexMatrix, ...]
    numbers: Tuple[ComplexMatrix, ...]

    def ladder(self, i: int, j: int) -> ComplexMatrix:
        return self.ladders[(i, j)]

    def cartan(self, k: int) -> ComplexMatrix:
        return self.cartans[k - 1]

    def number(self, i: int) -> ComplexMatrix:
        return self.numbers[i - 1]


class Su2Matrices(NamedTuple):
    """Standard spin-j matrices on |j,m⟩ ordered m = j, j−1, …, −j."""
    h: np.ndarray
    e_plus: np.ndarray
    e_minus: np.ndarray


def _root(basis: OrderedBasis, i: int, j: int) -> RootLabel:
    if i == j:
        raise InvalidRepresentationError(
            f"C_{i}{i} is not a ladder operator; use cartan_matrix or number_matrix")
    root = RootLabel(i, j)
    root.validate(basis.n)
    return root


def generator_matrix(basis: OrderedBasis, i: int, j: int) -> ComplexMatrix:
    """Matrix of C_ij = a_i† a_j.

    ⟨s′|C_ij|s⟩ = √(n_j (n_i + 1)) where s′ is s with one boson moved from
    mode j to mode i. The product is formed in integers and square-rooted once.
    """
    _root(basis, i, j)
    dim = basis.dimension
    entries = np.zeros((dim, dim), dtype=complex)
    for col, state in enumerate(basis.states):
        n_i, n_j = state[i], state[j]
        if n_j == 0:
            continue
        row = basis.index[state.shifted(i, j)]
        entries[row, col] = sqrt(n_j * (n_i + 1))
    return ComplexMatrix(entries, basis)


def number_matrix(basis: OrderedBasis, i: int) -> ComplexMatrix:
    """Diagonal C_ii = a_i† a_i."""
    if not 1 <= i <= basis.n:
        raise InvalidRepresentationError(f"mode {i} out of range for su({basis.n})")
    return ComplexMatrix(np.diag([float(state[i]) for state in basis.states]).astype(complex), basis)


def cartan_matrix(basis: OrderedBasis, k: int) -> ComplexMatrix:
    """Diagonal h_k with entries n_k − n_{k+1}."""
    if not 1 <= k <= basis.n - 1:
        raise InvalidRepresentationError(f"Cartan index {k} out of range 1..{basis.n - 1}")
    diag = [float(state[k] - state[k + 1]) for state in basis.states]
    return ComplexMatrix(np.diag(diag).astype(complex), basis)


def generator_set(basis: OrderedBasis) -> GeneratorSet:
    modes = range(1, basis.n + 1)
    ladders = {(i, j): generator_matrix(basis, i, j)
               for i, j in itertools.permutations(modes, 2)}
    cartans = tuple(cartan_matrix(basis, k) for k in range(1, basis.n))
    numbers = tuple(number_matrix(basis, i) for i in modes)
    logger.debug("generator set su(%d) (%d,0): %d ladders", basis.n, basis.lam, len(ladders))
    return GeneratorSet(basis=basis, ladders=ladders, cartans=cartans, numbers=numbers)


def _c(gens: GeneratorSet, i: int, j: int) -> np.ndarray:
    if i == j:
        return gens.number(i).entries
    return gens.ladder(i, j).entries


def commutation_residual(gens: GeneratorSet) -> float:
    """Largest violation of the u(n) relations on ``gens``.

    Checks [C_ij, C_kl] = δ_jk C_il − δ_il C_kj over all index quadruples
    (C_ii being the number operators) and [h_k, C_ij] = α_k C_ij with α the
    root of C_ij.
    """
    n = gens.basis.n
    modes = range(1, n + 1)
    residual = 0.0

    for i, j, k, l in itertools.product(modes, repeat=4):
        lhs = commutator(_c(gens, i, j), _c(gens, k, l))
        rhs = np.zeros_like(lhs)
        if j == k:
            rhs = rhs + _c(gens, i, l)
        if i == l:
            rhs = rhs - _c(gens, k, j)
        residual = max(residual, max_abs(lhs - rhs))

    for (i, j), ladder in gens.ladders.items():
        alpha = root_vector(RootLabel(i, j), n).components
        for k, h in enumerate(gens.cartans):
            lhs = commutator(h.entries, ladder.entries)
            residual = max(residual, max_abs(lhs - alpha[k] * ladder.entries))

    return residual


def su2_matrices(j: Union[int, float, str]) -> Su2Matrices:
    """Hermitian spin-j matrices.

    e₊|jm⟩ = √((j−m)(j+m+1)) |j,m+1⟩, h|jm⟩ = m|jm⟩, e₋ = e₊†. Position k
    of the basis holds m = j − k.
    """
    spin = as_spin(j)
    dim = spin_dimension(spin)
    ms = [spin - k for k in range(dim)]

    h = np.diag([float(m) for m in ms]).astype(complex)
    e_plus = np.zeros((dim, dim), dtype=complex)
    for k, m in enumerate(ms[1:], start=1):
        # |j,m⟩ at position k goes to |j,m+1⟩ at position k − 1
        e_plus[k - 1, k] = sqrt((spin - m) * (spin + m + 1))
    return Su2Matrices(h=h, e_plus=e_plus, e_minus=dagger(e_plus))


def su2_commutation_residual(mats: Su2Matrices) -> float:
    """Residual of [e₊, e₋] = 2h and [h, e±] = ±e±."""
    return max(
        max_abs(commutator(mats.e_plus, mats.e_minus) - 2 * mats.h),
        max_abs(commutator(mats.h, mats.e_plus) - mats.e_plus),
        max_abs(commutator(mats.h, mats.e_minus) + mats.e_minus),
    )


def schwinger_residual(j: Union[int, float, str]) -> float:
    """Compare spin-j matrices with the two-mode boson generators at λ = 2j.

    Under 2m = n_1 − n_2 the boson C_12, C_21 and h_1/2 must coincide with
    e₊, e₋ and h.
    """
    spin = as_spin(j)
    basis = enumerate_basis(2, int(2 * spin))
    mats = su2_matrices(spin)
    return max(
        max_abs(generator_matrix(basis, 1, 2).entries - mats.e_plus),
        max_abs(generator_matrix(basis, 2, 1).entries - mats.e_minus),
        max_abs(cartan_matrix(basis, 1).entries / 2 - mats.h),
    )


def hermitian_pairing_residual(gens: GeneratorSet) -> float:
    return max((max_abs(gens.ladder(i, j).entries - gens.ladder(j, i).entries.conj().T)
                for (i, j) in gens.ladders), default=0.0)


def cartan_weight_residual(gens: GeneratorSet) -> List[float]:
    """Per Cartan operator, the deviation of its diagonal from the state weights."""
    weights = np.array([weight_of(s).components for s in gens.basis.states], dtype=float)
    return [max_abs(np.diag(h.entries) - weights[:, k]) for k, h in enumerate(gens.cartans)]
