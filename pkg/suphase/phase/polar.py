"""Polar decomposition C = E·D of the ladder matrices and the unitary completion
of E.

D is the positive factor, E starts as a partial isometry that is undetermined
on the kernel of C. The completion used here fixes those columns so that E
cyclically permutes every su(2) weight string: the top of a string, which C
annihilates, is sent back to its bottom.
"""
import logging
from enum import Enum
from typing import Dict, List, Union

import numpy as np
import scipy.linalg
from dataclasses import dataclass

from ..algebra.repmatrix import ComplexMatrix, cartan_matrix, generator_matrix
from ..algebra.weightspace import OrderedBasis, RootLabel, kernel_states, su2_strings
from ..errors import CompletionError, InvalidRepresentationError, NotUnitaryError, ResidualBreach
from ..utils import as_array, commutator, max_abs, spin_dimension, square_array, unitarity_residual

logger = logging.getLogger(__name__)

ZERO_THRESHOLD = 1e-10
UNITARY_TOLERANCE = 1e-10
POLAR_TOLERANCE = 1e-12


class Convention(str, Enum):
    """How the undetermined columns of E are filled."""
    PLUS = "plus"
    PAPER_SIGN = "paper-sign"
    RAW_PARTIAL = "raw-partial"
    COMPLEMENTARY = "complementary"

    @property
    def tag(self) -> str:
        if self in (Convention.PLUS, Convention.PAPER_SIGN):
            return f"su2-invariant-{self.value}"
        return self.value

    @property
    def wrap_phase(self) -> complex:
        return -1.0 if self is Convention.PAPER_SIGN else 1.0


@dataclass(frozen=True, eq=False)
class PolarFactors:
    E: ComplexMatrix
    D: ComplexMatrix
    convention: Convention
    kernel_dimension: int

    def polar_residual(self, c: Union[ComplexMatrix, np.ndarray]) -> float:
        return max_abs(self.E.entries @ self.D.entries - as_array(c))

    @property
    def unitarity_residual(self) -> float:
        return unitarity_residual(self.E)


def as_convention(value: Union[str, Convention]) -> Convention:
    try:
        return Convention(value)
    except ValueError:
        choices = ", ".join(c.value for c in Convention)
        raise InvalidRepresentationError(f"unknown convention {value!r}; choose from {choices}")


def positive_factor(c: Union[ComplexMatrix, np.ndarray], side: str = "right") -> np.ndarray:
    """Hermitian positive semidefinite factor of ``c``.

    Parameters
    ----------
    c : :obj:`ComplexMatrix` or ndarray
        Square matrix.
    side : {'right', 'left'}
        ``'right'`` returns √(C†C) so that C = E·D; ``'left'`` returns √(CC†)
        so that C = D·E.

    Returns
    -------
    ndarray
        The square root computed from an eigendecomposition. Eigenvalues below
        1e-10 · max(largest eigenvalue, 1) are set to exactly zero.
    """
    arr = square_array(c)
    if side == "right":
        gram = arr.conj().T @ arr
    elif side == "left":
        gram = arr @ arr.conj().T
    else:
        raise InvalidRepresentationError(f"side must be 'right' or 'left', got {side!r}")

    gram = (gram + gram.conj().T) / 2
    eigvals, eigvecs = scipy.linalg.eigh(gram)
    floor = ZERO_THRESHOLD * max(float(np.max(eigvals, initial=0.0)), 1.0)
    roots = np.where(eigvals < floor, 0.0, np.sqrt(np.clip(eigvals, 0.0, None)))
    return (eigvecs * roots) @ eigvecs.conj().T


def partial_isometry(c: Union[ComplexMatrix, np.ndarray], d: np.ndarray) -> np.ndarray:
    """E₀ = C·D⁺, the part of E fixed by C; zero on the kernel of D."""
    return square_array(c) @ scipy.linalg.pinvh(d, atol=ZERO_THRESHOLD)


def numeric_kernel(c: Union[ComplexMatrix, np.ndarray]) -> List[int]:
    """Basis positions whose column of ``c`` vanishes."""
    arr = square_array(c)
    norms = np.linalg.norm(arr, axis=0)
    floor = ZERO_THRESHOLD * max(float(np.max(norms, initial=0.0)), 1.0)
    return [int(k) for k in np.flatnonzero(norms < floor)]


def su2_invariant_completion(basis: OrderedBasis,
                             root: RootLabel,
                             convention: Union[str, Convention] = Convention.PLUS) -> ComplexMatrix:
    """Unitary E_ij acting as the cyclic successor on every su(2)_{ij} string.

    Inside a string, E moves toward increasing n_i; the top of the string wraps
    to the bottom with phase +1 (``plus``) or −1 (``paper-sign``). Singleton
    strings are left fixed under both conventions.
    """
    conv = as_convention(convention)
    if conv not in (Convention.PLUS, Convention.PAPER_SIGN):
        raise InvalidRepresentationError(f"{conv.value} is not an su(2)-invariant completion")

    dim = basis.dimension
    entries = np.zeros((dim, dim), dtype=complex)
    for orbit in su2_strings(basis, root).orbits:
        if len(orbit) == 1:
            entries[orbit[0], orbit[0]] = 1.0
            continue
        for src, dst in zip(orbit[:-1], orbit[1:]):
            entries[dst, src] = 1.0
        entries[orbit[0], orbit[-1]] = conv.wrap_phase
    return ComplexMatrix(entries, basis)


def polar_factors(basis: OrderedBasis,
                  root: RootLabel,
                  convention: Union[str, Convention] = Convention.PLUS) -> PolarFactors:
    """Polar factors of C_ij on ``basis`` with the requested completion.

    The kernel of C_ij found numerically must coincide with the states n_j = 0;
    the completion then fills exactly those columns.
    """
    conv = as_convention(convention)
    c = generator_matrix(basis, root.i, root.j)
    d = positive_factor(c)
    e_partial = partial_isometry(c, d)

    kernel = numeric_kernel(c)
    expected = kernel_states(basis, root)
    if kernel != expected:
        raise CompletionError(
            f"C_{root.i}{root.j}: numerical kernel {kernel} differs from edge states {expected}")

    if conv is Convention.RAW_PARTIAL:
        e = ComplexMatrix(e_partial, basis)
    elif conv is Convention.COMPLEMENTARY:
        raise InvalidRepresentationError("complementary phases come from suphase.phase.complementarity")
    else:
        e = su2_invariant_completion(basis, root, conv)
        mismatch = max_abs(np.delete(e.entries - e_partial, kernel, axis=1))
        if mismatch > POLAR_TOLERANCE:
            raise CompletionError(f"completion disagrees with C·D⁺ off the kernel by {mismatch:.3e}")

    logger.debug("polar C_%d%d su(%d) (%d,0): kernel dimension %d",
                 root.i, root.j, basis.n, basis.lam, len(kernel))
    return PolarFactors(E=e, D=ComplexMatrix(d, basis), convention=conv, kernel_dimension=len(kernel))


def su2_shift_E(j: Union[int, float, str]) -> np.ndarray:
    """Cyclic down-shift Σ_m |j,m−1⟩⟨j,m| with m taken modulo 2j+1.

    On the basis m = j, …, −j this has ones on the subdiagonal and a one in
    the top-right corner.
    """
    dim = spin_dimension(j)
    return np.roll(np.eye(dim, dtype=complex), 1, axis=0)


def phase_hermitian(e: Union[ComplexMatrix, np.ndarray]) -> np.ndarray:
    """Hermitian φ with E = exp(iφ), eigenphases in (−π, π].

    E is normal, so its complex Schur form is diagonal and the Schur vectors
    diagonalize it unitarily even when eigenvalues are degenerate.
    """
    arr = square_array(e)
    if unitarity_residual(arr) > UNITARY_TOLERANCE:
        raise NotUnitaryError("polar completion required first: E is not unitary")

    t, z = scipy.linalg.schur(arr, output="complex")
    phases = np.angle(np.diag(t))
    phases = np.where(phases <= -np.pi + 1e-12, np.pi, phases)
    phi = (z * phases) @ z.conj().T
    phi = (phi + phi.conj().T) / 2

    residual = max_abs(scipy.linalg.expm(1j * phi) - arr)
    if residual > UNITARY_TOLERANCE:
        raise ResidualBreach("exp(iφ) = E", residual, UNITARY_TOLERANCE)
    return phi


def cartan_commutation_residual(basis: OrderedBasis, d: Union[ComplexMatrix, np.ndarray]) -> float:
    """max_k ‖[h_k, D]‖∞; the positive factors carry no weight shift."""
    return max(max_abs(commutator(cartan_matrix(basis, k), d)) for k in range(1, basis.n))


def d_identity_residuals(basis: OrderedBasis, side: str = "left") -> Dict[str, float]:
    """Residuals of D₁₂² − D₂₁² = h₁, D₂₃² − D₃₂² = h₂, D₁₃² − D₃₁² = h₁ + h₂.

    The identities hold with ``side='left'`` factors. With right factors
    √(C†C) the boson realization gives the opposite sign, and the residual is
    measured against −h instead.
    """
    if basis.n < 3:
        raise InvalidRepresentationError("D-operator identities need su(3) or larger")
    sign = 1.0 if side == "left" else -1.0

    def d_squared(i: int, j: int) -> np.ndarray:
        d = positive_factor(generator_matrix(basis, i, j), side=side)
        return d @ d

    h1 = cartan_matrix(basis, 1).entries
    h2 = cartan_matrix(basis, 2).entries
    targets = {(1, 2): h1, (2, 3): h2, (1, 3): h1 + h2}
    return {f"D{i}{j}^2-D{j}{i}^2": max_abs(d_squared(i, j) - d_squared(j, i) - sign * h)
            for (i, j), h in targets.items()}
