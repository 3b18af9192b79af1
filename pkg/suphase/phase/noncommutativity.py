"""Group commutators of phase operators and the λ-sweep of their norm."""
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from dataclasses import dataclass

from ..algebra.weightspace import OrderedBasis, RootLabel, enumerate_basis
from ..errors import FitError, InvalidRepresentationError, NotUnitaryError
from ..utils import as_array, dagger, same_dimension, unitarity_residual
from .complementarity import SIMPLEST_BETA, SIMPLEST_GAMMA, complementary_phase
from .polar import Convention, as_convention, polar_factors

logger = logging.getLogger(__name__)

DEFAULT_ROOTS = (RootLabel(1, 2), RootLabel(3, 1))
FIXED_POINT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NoncommutativityReport:
    n: int
    lam: int
    dimension: int
    raw_norm: float
    normalized_norm: float
    formula_value: Optional[Fraction]
    fixed_point_count: int
    convention: str
    trace_identity_residual: float = 0.0

    @property
    def difference(self) -> Optional[float]:
        if self.formula_value is None:
            return None
        return self.normalized_norm - float(self.formula_value)


def formula_su3(lam: int) -> Fraction:
    """2[2(λ+1) − 1] / (½(λ+1)(λ+2))."""
    if lam < 0:
        raise InvalidRepresentationError(f"lambda must be non-negative, got {lam}")
    return Fraction(2 * (2 * (lam + 1) - 1), 1) / Fraction((lam + 1) * (lam + 2), 2)


def formula_su4(lam: int) -> Fraction:
    """[2(λ+1)(λ+2) − (λ+1) − 1] / ((λ+1)(λ+2)(λ+3)/6)."""
    if lam < 0:
        raise InvalidRepresentationError(f"lambda must be non-negative, got {lam}")
    numerator = 2 * (lam + 1) * (lam + 2) - (lam + 1) - 1
    return Fraction(numerator, 1) / Fraction((lam + 1) * (lam + 2) * (lam + 3), 6)


def formula_value(n: int, lam: int, root_a: RootLabel, root_b: RootLabel) -> Optional[Fraction]:
    """Closed-form prediction when (n, roots) is the E₁₂/E₃₁ pair of su(3) or su(4)."""
    if {root_a, root_b} != set(DEFAULT_ROOTS):
        return None
    if n == 3:
        return formula_su3(lam)
    if n == 4:
        return formula_su4(lam)
    return None


def group_commutator(ea: Union[np.ndarray, object], eb: Union[np.ndarray, object]) -> Tuple[np.ndarray, np.ndarray]:
    """U = Ea·Eb·Ea⁻¹·Eb⁻¹ and M = U − 1 for unitary Ea, Eb."""
    same_dimension(ea, eb)
    a = as_array(ea)
    b = as_array(eb)
    if unitarity_residual(a) > 1e-10 or unitarity_residual(b) > 1e-10:
        raise NotUnitaryError("group commutator needs unitary phase operators")
    u = a @ b @ dagger(a) @ dagger(b)
    return u, u - np.eye(a.shape[0])


def phase_operator(basis: OrderedBasis,
                   root: RootLabel,
                   convention: Union[str, Convention] = Convention.PLUS,
                   beta: float = SIMPLEST_BETA,
                   gamma: float = SIMPLEST_GAMMA) -> np.ndarray:
    """Unitary E_ij under any supported completion convention."""
    conv = as_convention(convention)
    if conv is Convention.COMPLEMENTARY:
        if basis.n != 3 or basis.lam != 1:
            raise InvalidRepresentationError("complementary phases exist only for the (1,0) irrep of su(3)")
        return complementary_phase(root, beta, gamma)
    if conv is Convention.RAW_PARTIAL:
        raise NotUnitaryError("polar completion required first: raw-partial E is not unitary")
    return polar_factors(basis, root, conv).E.entries


def noncommutativity_norm(n: int,
                          lam: int,
                          root_a: RootLabel = DEFAULT_ROOTS[0],
                          root_b: RootLabel = DEFAULT_ROOTS[1],
                          convention: Union[str, Convention] = Convention.PLUS) -> NoncommutativityReport:
    """‖M‖² = Tr(M†M) for M = E_a E_b E_a⁻¹ E_b⁻¹ − 1 on the irrep (λ,0,…,0).

    Examples
    --------
    >>> noncommutativity_norm(3, 2).raw_norm
    10.0
    """
    conv = as_convention(convention)
    basis = enumerate_basis(n, lam)
    ea = phase_operator(basis, root_a, conv)
    eb = phase_operator(basis, root_b, conv)
    u, m = group_commutator(ea, eb)

    dim = basis.dimension
    raw = float(np.vdot(m, m).real)
    fixed = int(np.count_nonzero(np.abs(np.diag(u) - 1.0) < FIXED_POINT_TOLERANCE))
    identity_residual = abs(raw - 2 * (dim - float(np.trace(u).real)))

    return NoncommutativityReport(
        n=n, lam=lam, dimension=dim, raw_norm=raw, normalized_norm=raw / dim,
        formula_value=formula_value(n, lam, root_a, root_b), fixed_point_count=fixed,
        convention=conv.tag, trace_identity_residual=identity_residual)


def sweep(n: int,
          lam_min: int,
          lam_max: int,
          root_a: RootLabel = DEFAULT_ROOTS[0],
          root_b: RootLabel = DEFAULT_ROOTS[1],
          convention: Union[str, Convention] = Convention.PLUS,
          threads: int = 1) -> List[NoncommutativityReport]:
    """Reports for λ = lam_min … lam_max, ordered by λ whatever the thread count."""
    if lam_min < 0 or lam_min > lam_max:
        raise InvalidRepresentationError(f"bad lambda range {lam_min}..{lam_max}")
    if threads < 1:
        raise InvalidRepresentationError(f"threads must be >= 1, got {threads}")

    lams = range(lam_min, lam_max + 1)
    logger.info("Start sweep: su(%d) lambda %d..%d roots (%s),(%s) on %d thread(s)",
                n, lam_min, lam_max, root_a, root_b, threads)

    def _one(lam: int) -> NoncommutativityReport:
        return noncommutativity_norm(n, lam, root_a, root_b, convention)

    if threads == 1:
        reports = [_one(lam) for lam in lams]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_one, lams))

    logger.info("Finish sweep: %d reports", len(reports))
    return sorted(reports, key=lambda r: r.lam)


def _check_fit_points(reports: Sequence[NoncommutativityReport]) -> None:
    lams = [r.lam for r in reports]
    if len(reports) < 4:
        raise FitError(f"decay fit needs at least 4 points, got {len(reports)}")
    if len(set(lams)) != len(lams):
        raise FitError("decay fit needs distinct lambda values")
    if min(lams) < 2:
        raise FitError("decay fit uses lambda >= 2 only")
    if len({r.n for r in reports}) != 1:
        raise FitError("decay fit mixes different su(n)")


def decay_fit(reports: Sequence[NoncommutativityReport], method: str = "leading") -> float:
    """Estimate the exponent p in normalized ‖M‖² ∼ λ^p.

    Parameters
    ----------
    reports : :obj:`list` of :obj:`NoncommutativityReport`
        At least four reports of one su(n) with distinct λ >= 2.
    method : {'leading', 'loglog'}
        ``'loglog'`` is the least-squares slope of log(normalized) against
        log(λ). At λ of order ten it is dominated by finite-size terms (for
        su(4) the brute-force norm is 12λ/((λ+1)(λ+3))), so ``'leading'``
        instead fits the raw norm by least-squares polynomials of increasing
        degree, takes the lowest degree that reproduces it and subtracts the
        degree n−1 of the dimension.

    Returns
    -------
    float
        Exponent estimate.
    """
    _check_fit_points(reports)
    lams = np.array([r.lam for r in reports], dtype=float)
    normalized = np.array([r.normalized_norm for r in reports], dtype=float)
    if np.any(normalized <= 0):
        raise FitError("decay fit needs strictly positive norms")

    if method == "loglog":
        slope, _ = np.polyfit(np.log(lams), np.log(normalized), 1)
        return float(slope)

    if method != "leading":
        raise FitError(f"unknown decay fit method {method!r}")

    raw = np.array([r.normalized_norm * r.dimension for r in reports], dtype=float)
    scale = max(1.0, float(np.max(np.abs(raw))))
    for degree in range(len(reports) - 1):
        coeffs = np.polyfit(lams, raw, degree)
        if np.max(np.abs(np.polyval(coeffs, lams) - raw)) <= 1e-8 * scale:
            return float(degree - (reports[0].n - 1))

    raise FitError("raw norm is not polynomial in lambda over the given points")
