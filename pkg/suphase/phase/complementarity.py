"""Generalized Pauli matrices and the complementarity-based phase operators of the
(1,0) irrep of su(3).

A phase operator E is complementary to a population operator when
Z·E = ω²·E·Z with Z the exponentiated Cartan operator ω^h. For h₁ on (1,0)
this is the clock matrix diag(ω, ω², 1).

Dimensions other than 3 are experimental.
"""
import itertools
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from dataclasses import dataclass

from ..algebra.repmatrix import cartan_matrix, generator_matrix
from ..algebra.weightspace import RootLabel, enumerate_basis, kernel_states
from ..errors import InvalidRepresentationError
from ..utils import as_array, max_abs, square_array
from .polar import partial_isometry, positive_factor

logger = logging.getLogger(__name__)

SIMPLEST_BETA = 2 * np.pi / 3
SIMPLEST_GAMMA = -2 * np.pi / 3


@dataclass(frozen=True, eq=False)
class PauliPair:
    d: int
    omega: complex
    X: np.ndarray
    Z: np.ndarray


@dataclass(frozen=True, eq=False)
class ComplementarySolution:
    beta: float
    gamma: float
    E12: np.ndarray
    E23: np.ndarray
    E13: np.ndarray
    additive: bool


class AdditiveSolution(NamedTuple):
    beta: float
    gamma: float
    simplest: bool


class ClosureReport(NamedTuple):
    words: int
    distinct: int
    residual: float


class CompletionSearch(NamedTuple):
    lam: int
    e12_supports: int
    e23_supports: int
    commuting_pairs: int


def omega(d: int = 3) -> complex:
    return complex(np.exp(2j * np.pi / d))


def pauli_generators(d: int = 3) -> PauliPair:
    """Clock Z = diag(ω, ω², …, ω^{d−1}, 1) and the ω-decorated shift X.

    X[a, a+1] = ω^{−a} for a < d−1 and X[d−1, 0] closes the cycle so that
    X^d = 1. For d = 3 both are the displayed matrices with entries {1, ω², ω}.
    """
    if d < 2:
        raise InvalidRepresentationError(f"Pauli matrices need d >= 2, got {d}")
    w = omega(d)
    z = np.diag([w ** (a + 1) for a in range(d)])
    z[d - 1, d - 1] = 1.0

    x = np.zeros((d, d), dtype=complex)
    for a in range(d - 1):
        x[a, a + 1] = w ** (-a)
    x[d - 1, 0] = w ** ((d - 1) * (d - 2) // 2)
    return PauliPair(d=d, omega=w, X=x, Z=z)


def pauli_relation_residuals(pair: PauliPair) -> Dict[Tuple[int, int], float]:
    """‖X^k Z^ℓ − ω^{kℓ} Z^ℓ X^k‖∞ for every k, ℓ in Z_d."""
    residuals = {}
    for k, l in itertools.product(range(pair.d), repeat=2):
        xk = np.linalg.matrix_power(pair.X, k)
        zl = np.linalg.matrix_power(pair.Z, l)
        residuals[(k, l)] = max_abs(xk @ zl - pair.omega ** (k * l) * zl @ xk)
    return residuals


def pauli_order_residual(pair: PauliPair) -> float:
    """Residual of X^d = Z^d = 1."""
    eye = np.eye(pair.d)
    return max(max_abs(np.linalg.matrix_power(pair.X, pair.d) - eye),
               max_abs(np.linalg.matrix_power(pair.Z, pair.d) - eye))


def complementary_E12(beta: float) -> np.ndarray:
    e = np.zeros((3, 3), dtype=complex)
    e[0, 1] = 1.0
    e[1, 2] = np.exp(1j * beta)
    e[2, 0] = np.exp(-1j * beta)
    return e


def complementary_E23(gamma: float) -> np.ndarray:
    e = np.zeros((3, 3), dtype=complex)
    e[0, 1] = np.exp(1j * gamma)
    e[1, 2] = 1.0
    e[2, 0] = np.exp(-1j * gamma)
    return e


def complementary_E13(beta: float, gamma: float) -> np.ndarray:
    """Closed form of E₁₂(β)·E₂₃(γ)."""
    e = np.zeros((3, 3), dtype=complex)
    e[0, 2] = 1.0
    e[1, 0] = np.exp(1j * (beta - gamma))
    e[2, 1] = np.exp(-1j * (beta - gamma))
    return e


def complementary_solution(beta: float = SIMPLEST_BETA, gamma: float = SIMPLEST_GAMMA) -> ComplementarySolution:
    e12 = complementary_E12(beta)
    e23 = complementary_E23(gamma)
    additive = max_abs(e12 @ e23 - e23 @ e12) < 1e-12
    return ComplementarySolution(beta=beta, gamma=gamma, E12=e12, E23=e23,
                                 E13=complementary_E13(beta, gamma), additive=additive)


def complementary_phase(root: RootLabel, beta: float = SIMPLEST_BETA, gamma: float = SIMPLEST_GAMMA) -> np.ndarray:
    """E_ij of the complementary solution; E_ji is taken as E_ij†."""
    root.validate(3)
    sol = complementary_solution(beta, gamma)
    table = {(1, 2): sol.E12, (2, 3): sol.E23, (1, 3): sol.E13}
    if (root.i, root.j) in table:
        return table[(root.i, root.j)]
    return table[(root.j, root.i)].conj().T.copy()


def complementarity_check(e: Union[np.ndarray, object], z: Optional[np.ndarray] = None) -> float:
    """‖Z·E − ω²·E·Z‖∞, with Z the 3×3 clock matrix unless given."""
    arr = square_array(e)
    z_ = pauli_generators(3).Z if z is None else square_array(z)
    if z_.shape != arr.shape:
        raise InvalidRepresentationError(f"dimension mismatch: {z_.shape[0]} != {arr.shape[0]}")
    w = omega(arr.shape[0])
    return max_abs(z_ @ arr - w ** 2 * arr @ z_)


def _wrapped(angle: float) -> float:
    """Angle in (−π, π]."""
    wrapped = float(np.angle(np.exp(1j * angle)))
    return np.pi if wrapped <= -np.pi + 1e-12 else wrapped


def _is_multiple_of_2pi(angle: float) -> bool:
    return abs(_wrapped(angle)) < 1e-9


def additivity_solve() -> List[AdditiveSolution]:
    """(β, γ) with 3β ≡ 3γ ≡ 0 that also satisfy β+γ ≡ 2β−γ ≡ −β+2γ ≡ 0 (mod 2π).

    The nine candidates on the 2π/3 lattice are checked exhaustively; angles
    are returned in (−π, π].
    """
    lattice = [_wrapped(2 * np.pi * k / 3) for k in range(3)]
    solutions = []
    for beta, gamma in itertools.product(lattice, repeat=2):
        constraints = (beta + gamma, 2 * beta - gamma, -beta + 2 * gamma)
        if all(_is_multiple_of_2pi(c) for c in constraints):
            simplest = abs(beta - SIMPLEST_BETA) < 1e-12 and abs(gamma - SIMPLEST_GAMMA) < 1e-12
            solutions.append(AdditiveSolution(beta, gamma, simplest))
    logger.debug("additivity: %d of 9 lattice candidates pass", len(solutions))
    return solutions


def polar_constraint_residual(beta: float = SIMPLEST_BETA) -> float:
    """‖E₁₂(β)·D₁₂ − C₁₂‖∞ on (1,0)."""
    c12 = generator_matrix(enumerate_basis(3, 1), 1, 2)
    d12 = positive_factor(c12)
    return max_abs(complementary_E12(beta) @ d12 - c12.entries)


def common_eigenbasis(*matrices: np.ndarray) -> Tuple[np.ndarray, float]:
    """Unitary Q diagonalizing commuting normal matrices together.

    Returns Q and the largest off-diagonal entry of Q†·M·Q over the inputs.
    """
    if not matrices:
        raise InvalidRepresentationError("no matrices given")
    arrays = [square_array(m) for m in matrices]
    weights = [1.0, np.sqrt(2.0), np.pi, np.e, np.sqrt(7.0)]
    combined = sum(weights[k % len(weights)] * (1 + 0.1 * k) * a for k, a in enumerate(arrays))
    _, q = scipy.linalg.schur(combined, output="complex")

    residual = 0.0
    for a in arrays:
        t = q.conj().T @ a @ q
        residual = max(residual, max_abs(t - np.diag(np.diag(t))))
    return q, residual


def monomial_residual(matrix: Union[np.ndarray, object], d: int = 3) -> float:
    """Distance of ``matrix`` from a monomial matrix with entries in {ω^k}.

    Returns ``inf`` when the support is not a permutation.
    """
    arr = as_array(matrix)
    support = np.abs(arr) > 0.5
    if not (np.all(support.sum(axis=0) == 1) and np.all(support.sum(axis=1) == 1)):
        return float("inf")
    roots = np.array([omega(d) ** k for k in range(d)])
    nonzero = arr[support]
    off = arr[~support]
    dist = np.min(np.abs(nonzero[:, None] - roots[None, :]), axis=1)
    return float(max(np.max(dist), np.max(np.abs(off), initial=0.0)))


def pauli_closure_check(matrices: Sequence[np.ndarray], d: int = 3, max_length: int = 4) -> ClosureReport:
    """Multiply out every word of length ≤ ``max_length`` in ``matrices``.

    All products must remain ω-monomial; the report carries the number of
    words, of distinct products and the worst monomial residual.
    """
    arrays = [square_array(m) for m in matrices]
    distinct = {}  # type: Dict[bytes, np.ndarray]
    residual = 0.0
    words = 0
    for length in range(1, max_length + 1):
        for word in itertools.product(arrays, repeat=length):
            product = word[0]
            for factor in word[1:]:
                product = product @ factor
            words += 1
            residual = max(residual, monomial_residual(product, d))
            key = (np.round(product, 9) + 0.0).tobytes()
            distinct.setdefault(key, product)
    return ClosureReport(words=words, distinct=len(distinct), residual=residual)


def _complementary_supports(lam: int, root: RootLabel, cartan: int) -> List[np.ndarray]:
    basis = enumerate_basis(3, lam)
    c = generator_matrix(basis, root.i, root.j)
    fixed = np.abs(partial_isometry(c, positive_factor(c))) > 0.5
    kernel = kernel_states(basis, root)
    free_rows = [r for r in range(basis.dimension) if not fixed[r].any()]

    h = np.real(np.diag(cartan_matrix(basis, cartan).entries)).astype(int)
    supports = []
    for targets in itertools.permutations(free_rows):
        if all((h[row] - h[col] - 2) % 3 == 0 for col, row in zip(kernel, targets)):
            support = fixed.astype(int)
            for col, row in zip(kernel, targets):
                support[row, col] = 1
            supports.append(support)
    return supports


def complementary_completion_search(lam: int) -> CompletionSearch:
    """Search monomial completions of E₁₂ and E₂₃ on (λ,0) of su(3).

    A completion of E₁₂ is complementary when ω^{h₁}·E = ω²·E·ω^{h₁}, i.e.
    every entry raises h₁ by 2 modulo 3 (likewise E₂₃ with h₂). Phases do not
    affect that condition, and monomial matrices can commute only if their
    supports do, so counting commuting support pairs decides whether any
    complementary monomial completions commute.
    """
    if not 1 <= lam <= 5:
        raise InvalidRepresentationError(f"search is exhaustive; keep 1 <= lambda <= 5, got {lam}")
    e12 = _complementary_supports(lam, RootLabel(1, 2), 1)
    e23 = _complementary_supports(lam, RootLabel(2, 3), 2)
    commuting = sum(1 for a, b in itertools.product(e12, e23) if np.array_equal(a @ b, b @ a))
    logger.info("complementary search lambda=%d: %d x %d supports, %d commuting",
                lam, len(e12), len(e23), commuting)
    return CompletionSearch(lam=lam, e12_supports=len(e12), e23_supports=len(e23), commuting_pairs=commuting)
