"""Matrix-level coherent-state realization Γ.

Γ acts on exponential functions exp(imφ) (su(2)) or exp(i(xφ₁+yφ₂)) (su(3))
with integer ladder coefficients. It is not Hermitian; for su(2) the diagonal
binomial-square-root matrix K brings it to the standard form γ = K⁻¹ΓK.

Basis positions follow the rest of the package: for su(2) position k holds
m = j − k, for su(3) the states of ``enumerate_basis(3, λ)``.
"""
import logging
from fractions import Fraction
from math import comb, exp, sqrt
from typing import Dict, NamedTuple, Tuple, Union

import numpy as np
from dataclasses import dataclass
from scipy.special import gammaln

from ..algebra.repmatrix import ComplexMatrix, GeneratorSet, commutation_residual, su2_matrices
from ..algebra.weightspace import OrderedBasis, RootLabel, enumerate_basis, root_vector, weight_of
from ..errors import InvalidRepresentationError
from ..utils import as_spin, commutator, dagger, max_abs, square_array
from .polar import partial_isometry, positive_factor, su2_shift_E

logger = logging.getLogger(__name__)

# Binomials up to C(1000, 500) fit a float; above that go through log-gamma.
EXACT_BINOMIAL_LIMIT = 1000

# Γ(C_ij) coefficient on weight (x, y) is (a·λ + b·x + c·y)/3. The raising
# entries come from the displayed differential operators acting on
# exp(i(xφ₁+yφ₂)); the lowering ones follow the su(2) pattern (j+m).
SU3_LADDER_COEFFICIENTS = {
    (1, 2): (1, -1, 1),
    (2, 3): (1, -1, -2),
    (2, 1): (1, 2, 1),
    (3, 2): (1, -1, 1),
}


@dataclass(frozen=True, eq=False)
class GammaSu2:
    j: Fraction
    h: np.ndarray
    e_plus: np.ndarray
    e_minus: np.ndarray

    @property
    def dimension(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True, eq=False)
class IntertwinerK:
    j: Fraction
    diagonal: np.ndarray

    @property
    def K(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def S(self) -> np.ndarray:
        """S = K K†, the positive intertwiner."""
        return self.diagonal ** 2


@dataclass(frozen=True, eq=False)
class GammaSu3:
    lam: int
    basis: OrderedBasis
    h1: np.ndarray
    h2: np.ndarray
    ladders: Dict[Tuple[int, int], np.ndarray]

    def as_generator_set(self) -> GeneratorSet:
        lam = float(self.lam)
        eye = np.eye(self.basis.dimension)
        numbers = ((lam * eye + 2 * self.h1 + self.h2) / 3,
                   (lam * eye - self.h1 + self.h2) / 3,
                   (lam * eye - self.h1 - 2 * self.h2) / 3)
        wrap = lambda arr: ComplexMatrix(arr, self.basis)  # noqa: E731
        return GeneratorSet(basis=self.basis,
                            ladders={key: wrap(arr) for key, arr in self.ladders.items()},
                            cartans=(wrap(self.h1), wrap(self.h2)),
                            numbers=tuple(wrap(n) for n in numbers))


class DftEigensystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray
    eigen_residual: float
    solver_residual: float
    unbiasedness_residual: float


def gamma_su2(j: Union[int, float, str, Fraction]) -> GammaSu2:
    """Γ(h)|jm⟩ = m|jm⟩, Γ(e±)|jm⟩ = (j ∓ m)|j,m±1⟩ as integer matrices."""
    spin = as_spin(j)
    two_j = int(2 * spin)
    dim = two_j + 1
    e_plus = np.zeros((dim, dim), dtype=np.int64)
    e_minus = np.zeros((dim, dim), dtype=np.int64)
    for k in range(dim):
        # m = j − k, so j − m = k and j + m = 2j − k
        if k > 0:
            e_plus[k - 1, k] = k
        if k < two_j:
            e_minus[k + 1, k] = two_j - k
    h = np.diag([float(spin - k) for k in range(dim)])
    return GammaSu2(j=spin, h=h, e_plus=e_plus, e_minus=e_minus)


def gamma_su2_commutation_residual(g: GammaSu2) -> int:
    """Exact integer residual of [Γ(e₊), Γ(e₋)] = 2Γ(h) and [Γ(h), Γ(e±)] = ±Γ(e±)."""
    two_h = np.rint(2 * g.h).astype(np.int64)
    plus_minus = g.e_plus @ g.e_minus - g.e_minus @ g.e_plus
    h_plus = two_h @ g.e_plus - g.e_plus @ two_h
    h_minus = two_h @ g.e_minus - g.e_minus @ two_h
    return int(max(np.max(np.abs(plus_minus - two_h)),
                   np.max(np.abs(h_plus - 2 * g.e_plus)),
                   np.max(np.abs(h_minus + 2 * g.e_minus))))


def nonhermiticity_witness(g: GammaSu2) -> float:
    """‖Γ(e₊) − Γ(e₋)†‖∞, which works out to |2j − 1| for j ≥ 1/2."""
    return max_abs(g.e_plus - g.e_minus.T)


def intertwiner(j: Union[int, float, str, Fraction]) -> IntertwinerK:
    """K_mm = √((2j)! / ((j+m)!(j−m)!))."""
    spin = as_spin(j)
    two_j = int(2 * spin)
    if two_j <= EXACT_BINOMIAL_LIMIT:
        diagonal = [sqrt(float(comb(two_j, k))) for k in range(two_j + 1)]
    else:
        diagonal = [exp(0.5 * (gammaln(two_j + 1) - gammaln(two_j - k + 1) - gammaln(k + 1)))
                    for k in range(two_j + 1)]
    return IntertwinerK(j=spin, diagonal=np.array(diagonal, dtype=float))


def hermitize(j: Union[int, float, str, Fraction]) -> Tuple[np.ndarray, np.ndarray]:
    """K⁻¹Γ(e₋)K and K⁻¹Γ(e₊)K."""
    g = gamma_su2(j)
    k = intertwiner(j).diagonal
    conj = lambda arr: (arr / k[:, None]) * k[None, :]  # noqa: E731
    return conj(g.e_minus.astype(float)), conj(g.e_plus.astype(float))


def hermitize_check(j: Union[int, float, str, Fraction]) -> float:
    """Compare K⁻¹ΓK with the standard Hermitian spin-j matrices."""
    gamma_minus, gamma_plus = hermitize(j)
    standard = su2_matrices(as_spin(j))
    return max(max_abs(gamma_minus - standard.e_minus),
               max_abs(gamma_plus - dagger(standard.e_minus)))


def s_recursion_check(j: Union[int, float, str, Fraction]) -> float:
    """max_m |S_{m+1}(j+m+1) − S_m(j−m)| / S_m(j−m) with S = K²."""
    spin = as_spin(j)
    two_j = int(2 * spin)
    s = intertwiner(spin).S
    residual = 0.0
    for k in range(1, two_j + 1):
        # m = j − k at position k, m + 1 at position k − 1
        lhs = s[k - 1] * (two_j - k + 1)
        rhs = s[k] * k
        residual = max(residual, abs(lhs - rhs) / rhs)
    return residual


def k_commutation_residual(j: Union[int, float, str, Fraction]) -> float:
    """K against Γ(h), Γ(e₋)Γ(e₊) and Γ(e₊)Γ(e₋)."""
    g = gamma_su2(j)
    k = intertwiner(j).K
    targets = (g.h, g.e_minus @ g.e_plus, g.e_plus @ g.e_minus)
    return max(max_abs(commutator(k, t)) for t in targets)


def spectrum_residual(j: Union[int, float, str, Fraction]) -> float:
    """Spectra of Γ(e₊)Γ(e₋) and γ(e₊)γ(e₋) must coincide."""
    g = gamma_su2(j)
    standard = su2_matrices(as_spin(j))
    lhs = np.sort(np.linalg.eigvals((g.e_plus @ g.e_minus).astype(float)).real)
    rhs = np.sort(np.linalg.eigvalsh(standard.e_plus @ standard.e_minus))
    return max_abs(lhs - rhs)


def gamma_phase_part(g: GammaSu2) -> np.ndarray:
    """Γ(E) from Γ(e₋) = Γ(E)·Γ(D), completed cyclically (m taken modulo 2j+1).

    Γ(e₋) is a weight shift with non-negative integer coefficients, so its
    phase part has entries 0 or 1 and is returned exactly.
    """
    e_minus = g.e_minus.astype(complex)
    d = positive_factor(e_minus)
    e = partial_isometry(e_minus, d)

    hit_rows = np.abs(e).sum(axis=1) > 0.5
    kernel = [c for c in range(g.dimension) if np.abs(e[:, c]).sum() < 0.5]
    free_rows = [r for r in range(g.dimension) if not hit_rows[r]]
    for col, row in zip(kernel, free_rows):
        e[row, col] = 1.0

    snapped = np.rint(e.real)
    deviation = max_abs(e - snapped)
    if deviation > 1e-12:
        raise InvalidRepresentationError(f"phase part is not a 0/1 matrix (deviation {deviation:.3e})")
    return snapped.astype(complex)


def gamma_phase_residual(j: Union[int, float, str, Fraction]) -> float:
    return max_abs(gamma_phase_part(gamma_su2(j)) - su2_shift_E(j))


def _weight_shift(basis: OrderedBasis, root: RootLabel, coefficients: Tuple[int, int, int]) -> np.ndarray:
    a, b, c = coefficients
    shift = root_vector(root, 3).components
    positions = {weight_of(s).components: k for k, s in enumerate(basis.states)}
    arr = np.zeros((basis.dimension, basis.dimension))
    for col, state in enumerate(basis.states):
        x, y = weight_of(state).components
        coef = Fraction(a * basis.lam + b * x + c * y, 3)
        if coef == 0:
            continue
        target = (x + shift[0], y + shift[1])
        if target not in positions:
            raise InvalidRepresentationError(f"weight {target} outside (λ,0) with coefficient {coef}")
        arr[positions[target], col] = float(coef)
    return arr


def gamma_su3(lam: int) -> GammaSu3:
    """Γ realization of su(3) on the (λ,0) weight basis.

    Γ(C₁₂), Γ(C₂₃) and their lowering partners are weight shifts with linear
    coefficients; Γ(C₁₃) = [Γ(C₁₂), Γ(C₂₃)] and Γ(C₃₁) = [Γ(C₃₂), Γ(C₂₁)]
    close the set. Operators are assigned by the weight shift they produce.
    """
    basis = enumerate_basis(3, lam)
    weights = np.array([weight_of(s).components for s in basis.states], dtype=float).reshape(-1, 2)
    ladders = {key: _weight_shift(basis, RootLabel(*key), coefs)
               for key, coefs in SU3_LADDER_COEFFICIENTS.items()}
    ladders[(1, 3)] = commutator(ladders[(1, 2)], ladders[(2, 3)]).real
    ladders[(3, 1)] = commutator(ladders[(3, 2)], ladders[(2, 1)]).real
    return GammaSu3(lam=lam, basis=basis, h1=np.diag(weights[:, 0]), h2=np.diag(weights[:, 1]),
                    ladders=ladders)


def gamma_su3_commutation_residual(g: GammaSu3) -> float:
    return commutation_residual(g.as_generator_set())


def su3_limit_deviation(lam: int, window: int = 2) -> float:
    """max |coefficient/λ − 1/3| of Γ(C₁₂), Γ(C₂₃), Γ(C₁₃) on weights |x|, |y| ≤ window.

    On a fixed window of finite weights this decays like 1/λ, so the rescaled
    ladder operators C_ij/λ become commuting shifts.
    """
    if lam < 1:
        raise InvalidRepresentationError(f"lambda must be positive, got {lam}")
    g = gamma_su3(lam)
    cols = [k for k, s in enumerate(g.basis.states)
            if all(abs(c) <= window for c in weight_of(s).components)]
    if not cols:
        raise InvalidRepresentationError(f"no weights inside window {window} for lambda={lam}")

    deviation = 0.0
    for key in ((1, 2), (2, 3), (1, 3)):
        column_values = g.ladders[key][:, cols].sum(axis=0) / lam
        deviation = max(deviation, float(np.max(np.abs(column_values - 1 / 3))))
    return deviation


def dft_eigensystem(e: Union[np.ndarray, object]) -> DftEigensystem:
    """Eigenpairs of the cyclic shift: eigenvalue ω^k with components ω^{−ka}/√N.

    Labelled by m = j − a the components are ω^{km}/√N up to a global phase.
    """
    arr = square_array(e)
    size = arr.shape[0]
    if max_abs(arr - np.roll(np.eye(size), 1, axis=0)) > 1e-12:
        raise InvalidRepresentationError("dft_eigensystem expects the cyclic shift matrix")

    w = np.exp(2j * np.pi / size)
    ks = np.arange(size)
    values = w ** ks
    vectors = w ** (-np.outer(ks, ks)) / np.sqrt(size)

    eigen_residual = max_abs(arr @ vectors - vectors * values[None, :])
    solver = np.linalg.eigvals(arr)
    distances = np.abs(solver[:, None] - values[None, :])
    solver_residual = float(max(np.max(np.min(distances, axis=0)), np.max(np.min(distances, axis=1))))
    unbiased = max_abs(np.abs(vectors) ** 2 - 1 / size)
    return DftEigensystem(values=values, vectors=vectors, eigen_residual=eigen_residual,
                          solver_residual=solver_residual, unbiasedness_residual=unbiased)
