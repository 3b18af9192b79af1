"""Boson bases of the symmetric irreps (λ,0,…,0) of su(n), their weights, roots,
su(2) strings and edge states.

States are labelled by occupation numbers ``(n_1, …, n_n)`` with ``Σ n_k = λ``.
All values here are immutable and every function is pure.
"""
import logging
from functools import lru_cache
from math import comb, sqrt
from typing import Dict, Iterator, List, NamedTuple, Tuple

from dataclasses import dataclass, field

from ..errors import InvalidRepresentationError

logger = logging.getLogger(__name__)

# Fundamental weights and simple roots of su(3) in Cartesian coordinates.
SU3_FUNDAMENTAL_WEIGHTS = ((1 / sqrt(2), 1 / sqrt(6)), (0.0, sqrt(2 / 3)))
SU3_SIMPLE_ROOTS = ((sqrt(2), 0.0), (-sqrt(2) / 2, sqrt(6) / 2))


@dataclass(frozen=True)
class OccupationState:
    occupations: Tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 0 for n in self.occupations):
            raise InvalidRepresentationError(f"negative occupation in {self.occupations}")

    @property
    def level_count(self) -> int:
        return len(self.occupations)

    @property
    def total(self) -> int:
        return sum(self.occupations)

    def __getitem__(self, mode: int) -> int:
        """Occupation of ``mode``, numbered from 1 as in C_ij."""
        return self.occupations[mode - 1]

    def shifted(self, i: int, j: int) -> "OccupationState":
        """State with one boson moved from mode ``j`` to mode ``i``."""
        occ = list(self.occupations)
        occ[i - 1] += 1
        occ[j - 1] -= 1
        return OccupationState(tuple(occ))

    def ket(self) -> str:
        sep = "," if any(n > 9 for n in self.occupations) else ""
        return "|" + sep.join(str(n) for n in self.occupations) + "⟩"


class WeightVector(NamedTuple):
    components: Tuple[int, ...]


@dataclass(frozen=True)
class RootLabel:
    """Index pair (i, j) naming the generator C_ij = a_i† a_j."""
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise InvalidRepresentationError(f"root needs i != j, got ({self.i}, {self.j})")
        if self.i < 1 or self.j < 1:
            raise InvalidRepresentationError(f"root indices start at 1, got ({self.i}, {self.j})")

    @classmethod
    def parse(cls, text: str) -> "RootLabel":
        """Parse ``"1,2"`` into ``RootLabel(1, 2)``."""
        try:
            i, j = (int(part) for part in text.split(","))
        except ValueError:
            raise InvalidRepresentationError(f"root must look like 'i,j', got {text!r}")
        return cls(i, j)

    def validate(self, n: int) -> None:
        if self.i > n or self.j > n:
            raise InvalidRepresentationError(f"root ({self.i}, {self.j}) out of range for su({n})")

    @property
    def reverse(self) -> "RootLabel":
        return RootLabel(self.j, self.i)

    def __str__(self) -> str:
        return f"{self.i},{self.j}"


@dataclass(frozen=True)
class OrderedBasis:
    n: int
    lam: int
    states: Tuple[OccupationState, ...]
    index: Dict[OccupationState, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[OccupationState]:
        return iter(self.states)

    def __getitem__(self, position: int) -> OccupationState:
        return self.states[position]

    @property
    def dimension(self) -> int:
        return len(self.states)

    def position(self, occupations: Tuple[int, ...]) -> int:
        return self.index[OccupationState(tuple(occupations))]


@dataclass(frozen=True)
class StringPartition:
    root: RootLabel
    orbits: Tuple[Tuple[int, ...], ...]

    @property
    def lengths(self) -> List[int]:
        return [len(orbit) for orbit in self.orbits]


class EdgeOverlap(NamedTuple):
    count_a: int
    count_b: int
    intersection: int
    union: int


def basis_dimension(n: int, lam: int) -> int:
    """Closed-form dimension C(λ+n−1, n−1) of (λ,0,…,0)."""
    return comb(lam + n - 1, n - 1)


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    # Lexicographically decreasing.
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_basis(n: int, lam: int) -> OrderedBasis:
    """Enumerate the boson basis of the irrep (λ,0,…,0) of su(n).

    Parameters
    ----------
    n : int
        Number of boson modes, n >= 2.
    lam : int
        Total boson number λ >= 0.

    Returns
    -------
    :obj:`OrderedBasis`
        States in lexicographically decreasing order of (n_1, …, n_n).

    Examples
    --------
    >>> [s.ket() for s in enumerate_basis(3, 1)]
    ['|100⟩', '|010⟩', '|001⟩']
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise InvalidRepresentationError(f"n must be an integer >= 2, got {n!r}")
    if isinstance(lam, bool) or not isinstance(lam, int) or lam < 0:
        raise InvalidRepresentationError(f"lambda must be a non-negative integer, got {lam!r}")

    states = tuple(OccupationState(occ) for occ in _compositions(lam, n))
    index = {state: k for k, state in enumerate(states)}
    assert len(states) == basis_dimension(n, lam)

    logger.debug("basis su(%d) (%d,0): dimension %d", n, lam, len(states))
    return OrderedBasis(n=n, lam=lam, states=states, index=index)


def weight_of(state: OccupationState) -> WeightVector:
    """Cartan eigenvalues of ``state``: component k is n_k − n_{k+1}."""
    occ = state.occupations
    return WeightVector(tuple(occ[k] - occ[k + 1] for k in range(len(occ) - 1)))


def root_vector(root: RootLabel, n: int) -> WeightVector:
    """Weight shift produced by C_ij, i.e. the root attached to ``root``."""
    root.validate(n)
    delta = [0] * n
    delta[root.i - 1] += 1
    delta[root.j - 1] -= 1
    return WeightVector(tuple(delta[k] - delta[k + 1] for k in range(n - 1)))


def cartesian_embedding(w: WeightVector, n: int = 3) -> Tuple[float, float]:
    """Cartesian coordinates x·w¹ + y·w² of an su(3) weight (x, y)."""
    if n != 3 or len(w.components) != 2:
        raise InvalidRepresentationError(f"embedding not defined for su({n})")
    x, y = w.components
    (w1x, w1y), (w2x, w2y) = SU3_FUNDAMENTAL_WEIGHTS
    return (x * w1x + y * w2x, x * w1y + y * w2y)


def su2_strings(basis: OrderedBasis, root: RootLabel) -> StringPartition:
    """Partition ``basis`` into the weight strings of su(2)_{ij}.

    Each orbit fixes every occupation outside {i, j} and is ordered by increasing
    n_i, so C_ij moves position k of an orbit to position k + 1.
    """
    root.validate(basis.n)
    frozen = [k for k in range(basis.n) if k not in (root.i - 1, root.j - 1)]

    groups = {}  # type: Dict[Tuple[int, ...], List[int]]
    for idx, state in enumerate(basis.states):
        key = tuple(state.occupations[k] for k in frozen)
        groups.setdefault(key, []).append(idx)

    orbits = tuple(
        tuple(sorted(members, key=lambda k: basis.states[k][root.i]))
        for members in groups.values())
    return StringPartition(root=root, orbits=orbits)


def kernel_states(basis: OrderedBasis, root: RootLabel) -> List[int]:
    """Positions of the states annihilated by C_ij, namely those with n_j = 0."""
    root.validate(basis.n)
    return [idx for idx, state in enumerate(basis.states) if state[root.j] == 0]


def edge_overlap_count(basis: OrderedBasis, root_a: RootLabel, root_b: RootLabel) -> EdgeOverlap:
    if root_a == root_b:
        raise InvalidRepresentationError("edge overlap needs two different roots")
    kernel_a = set(kernel_states(basis, root_a))
    kernel_b = set(kernel_states(basis, root_b))
    return EdgeOverlap(len(kernel_a), len(kernel_b), len(kernel_a & kernel_b), len(kernel_a | kernel_b))
