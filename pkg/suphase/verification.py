"""Invariant suites run by ``suphase verify``.

Every check is a named residual compared against an entry of the tolerance
table (``suphase/resources/tolerances.yml``). A check whose computation raises
a :class:`SuphaseError` is recorded as failed with an infinite residual.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache, partial
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional

import numpy as np
import scipy.linalg

from .algebra import (RootLabel, cartan_weight_residual, commutation_residual, enumerate_basis,
                      generator_matrix, generator_set, hermitian_pairing_residual, schwinger_residual,
                      su2_commutation_residual, su2_matrices)
from .config import load_tolerances
from .errors import InvalidRepresentationError, SuphaseError
from .phase import (Convention, additivity_solve, cartan_commutation_residual, common_eigenbasis,
                    complementarity_check, complementary_completion_search, complementary_solution,
                    d_identity_residuals, decay_fit,
                    dft_eigensystem, gamma_phase_residual, gamma_su2, gamma_su2_commutation_residual,
                    gamma_su3, gamma_su3_commutation_residual, hermitize_check, k_commutation_residual,
                    pauli_closure_check, pauli_generators, pauli_order_residual,
                    pauli_relation_residuals, phase_hermitian, polar_constraint_residual, polar_factors,
                    s_recursion_check, spectrum_residual, su2_invariant_completion, su2_shift_E,
                    su3_limit_deviation, sweep)
from .utils import max_abs

logger = logging.getLogger(__name__)

SUITES = ("su2", "su3", "su4", "pauli", "gamma")

# Explicit (1,0) solutions of su(3) on the basis |100>, |010>, |001>.
SU3_E12_PAPER_SIGN = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=complex)
SU3_E23_PAPER_SIGN = np.array([[1, 0, 0], [0, 0, 1], [0, -1, 0]], dtype=complex)
SU3_PHI12 = (np.pi / 2) * np.array([[0, -1j, 0], [1j, 0, 0], [0, 0, 0]], dtype=complex)

D_IDENTITIES = ("D12^2-D21^2", "D23^2-D32^2", "D13^2-D31^2")
SU3_LIMIT_WINDOW = 2


class Check(NamedTuple):
    suite: str
    name: str
    residual: float
    tolerance: float
    message: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_dict(self) -> Dict[str, object]:
        return {"suite": self.suite, "name": self.name, "residual": self.residual,
                "tolerance": self.tolerance, "passed": self.passed, "message": self.message}


class _Runner:

    def __init__(self, suite: str, tolerances: Dict[str, float]) -> None:
        self.suite = suite
        self.tolerances = tolerances
        self.checks = []  # type: List[Check]

    def check(self, key: str, label: str, compute: Callable[[], float]) -> None:
        tolerance = self.tolerances[key]
        try:
            residual = float(compute())
            message = ""
        except SuphaseError as e:
            residual, message = float("inf"), str(e)
        name = f"{key}[{label}]" if label else key
        self.checks.append(Check(self.suite, name, residual, tolerance, message))
        logger.debug("%s %s: %.3e (tolerance %.1e)", self.suite, name, residual, tolerance)


def _spins(max_j: Fraction) -> Iterator[Fraction]:
    two_j = 1
    while Fraction(two_j, 2) <= max_j:
        yield Fraction(two_j, 2)
        two_j += 1


def _label(j: Fraction) -> str:
    return f"j={j}"


def _su2_suite(run: _Runner) -> None:
    for j in _spins(Fraction(15)):
        run.check("su2_commutation", _label(j), lambda: su2_commutation_residual(su2_matrices(j)))
        run.check("schwinger", _label(j), lambda: schwinger_residual(j))
        run.check("shift_order", _label(j), lambda: max_abs(
            np.linalg.matrix_power(su2_shift_E(j), int(2 * j) + 1) - np.eye(int(2 * j) + 1)))
    for lam in range(7):
        run.check("commutation", f"n=2 lambda={lam}",
                  lambda: commutation_residual(generator_set(enumerate_basis(2, lam))))
    for j in _spins(Fraction(10)):
        shift = su2_shift_E(j)
        # built on first use, shared by the checks below
        system = lru_cache(maxsize=None)(partial(dft_eigensystem, shift))
        run.check("roots_of_unity", _label(j), lambda: max(system().eigen_residual, system().solver_residual))
        run.check("unbiasedness", _label(j), lambda: system().unbiasedness_residual)
        run.check("phase_log", _label(j), lambda: max_abs(scipy.linalg.expm(1j * phase_hermitian(shift)) - shift))


def _polar_checks(run: _Runner, n: int, lam: int) -> None:
    basis = enumerate_basis(n, lam)
    for i, j in itertools.permutations(range(1, n + 1), 2):
        root = RootLabel(i, j)
        c = generator_matrix(basis, i, j)
        for convention in (Convention.PLUS, Convention.PAPER_SIGN):
            label = f"n={n} lambda={lam} root={root} {convention.value}"
            run.check("polar_identity", label, lambda: polar_factors(basis, root, convention).polar_residual(c))
            run.check("unitarity", label, lambda: polar_factors(basis, root, convention).unitarity_residual)
        run.check("cartan_commutation", f"n={n} lambda={lam} root={root}",
                  lambda: cartan_commutation_residual(basis, polar_factors(basis, root).D))


def _su3_suite(run: _Runner) -> None:
    for lam in range(7):
        label = f"n=3 lambda={lam}"
        gens = generator_set(enumerate_basis(3, lam))
        run.check("commutation", label, lambda: commutation_residual(gens))
        run.check("hermitian_pairing", label, lambda: hermitian_pairing_residual(gens))
        run.check("cartan_weight", label, lambda: max(cartan_weight_residual(gens)))
        _polar_checks(run, 3, lam)

    for lam in range(9):
        basis = enumerate_basis(3, lam)
        for side in ("left", "right"):
            identities = lru_cache(maxsize=None)(partial(d_identity_residuals, basis, side))
            for name in D_IDENTITIES:
                run.check("d_identity", f"{name} {side} lambda={lam}", lambda: identities()[name])

    for report in sweep(3, 1, 10):
        run.check("norm_formula", f"lambda={report.lam}", lambda: abs(report.difference))
        run.check("trace_identity", f"n=3 lambda={report.lam}", lambda: report.trace_identity_residual)
        # every entry of a plus-convention E is 1, so U is a permutation
        run.check("trace_identity", f"fixed points n=3 lambda={report.lam}",
                  lambda: abs(report.raw_norm - 2 * (report.dimension - report.fixed_point_count)))

    basis = enumerate_basis(3, 1)
    run.check("explicit_solution", "E12 paper-sign", lambda: max_abs(
        su2_invariant_completion(basis, RootLabel(1, 2), Convention.PAPER_SIGN).entries - SU3_E12_PAPER_SIGN))
    run.check("explicit_solution", "E23 paper-sign", lambda: max_abs(
        su2_invariant_completion(basis, RootLabel(2, 3), Convention.PAPER_SIGN).entries - SU3_E23_PAPER_SIGN))
    run.check("phase_log", "phi12 paper-sign", lambda: max_abs(phase_hermitian(SU3_E12_PAPER_SIGN) - SU3_PHI12))


def _su4_suite(run: _Runner) -> None:
    for lam in range(7):
        run.check("commutation", f"n=4 lambda={lam}",
                  lambda: commutation_residual(generator_set(enumerate_basis(4, lam))))
    for lam in range(5):
        _polar_checks(run, 4, lam)

    reports = sweep(4, 2, 8)
    for report in reports:
        run.check("trace_identity", f"n=4 lambda={report.lam}", lambda: report.trace_identity_residual)
    run.check("decay_exponent", "n=4 lambda=2..8", lambda: abs(decay_fit(reports) + 1.0))


def _pauli_suite(run: _Runner) -> None:
    pair = pauli_generators(3)
    for (k, l), residual in pauli_relation_residuals(pair).items():
        run.check("pauli_relation", f"k={k} l={l}", lambda: residual)
    run.check("pauli_order", "X^3=Z^3=1", lambda: pauli_order_residual(pair))

    w = pair.omega
    sol = complementary_solution()
    displayed = {
        "E12": np.array([[0, 1, 0], [0, 0, w], [w ** 2, 0, 0]]),
        "E23": np.array([[0, w ** 2, 0], [0, 0, 1], [w, 0, 0]]),
        "E13": np.array([[0, 0, 1], [w ** 2, 0, 0], [0, w, 0]]),
    }
    for name, expected in displayed.items():
        run.check("explicit_solution", f"{name} complementary", lambda: max_abs(getattr(sol, name) - expected))
    # E13 = E12.E23 picks up ω rather than ω² under the clock matrix
    for name in ("E12", "E23"):
        run.check("complementarity", name, lambda: complementarity_check(getattr(sol, name)))
    run.check("explicit_solution", "E13=E12.E23", lambda: max_abs(sol.E13 - sol.E12 @ sol.E23))

    solutions = additivity_solve()
    run.check("additivity", "solution count", lambda: abs(len(solutions) - 3))
    for s in solutions:
        candidate = complementary_solution(s.beta, s.gamma)
        run.check("additivity", f"beta={s.beta:.6f} gamma={s.gamma:.6f}",
                  lambda: max_abs(candidate.E12 @ candidate.E23 - candidate.E23 @ candidate.E12))
        run.check("common_eigenbasis", f"beta={s.beta:.6f} gamma={s.gamma:.6f}",
                  lambda: common_eigenbasis(candidate.E12, candidate.E23)[1])
    run.check("complementarity", "polar constraint E12.D12=C12", lambda: polar_constraint_residual())
    run.check("closure", "X Z E12 E23 words<=4",
              lambda: pauli_closure_check([pair.X, pair.Z, sol.E12, sol.E23]).residual)
    # the explicit (1,0) solution is one commuting pair of complementary supports
    run.check("completion_search", "lambda=1",
              lambda: 0.0 if complementary_completion_search(1).commuting_pairs >= 1 else 1.0)


def _gamma_suite(run: _Runner) -> None:
    for j in _spins(Fraction(15)):
        run.check("gamma_su2_commutation", _label(j), lambda: gamma_su2_commutation_residual(gamma_su2(j)))
        run.check("hermitize", _label(j), lambda: hermitize_check(j))
        run.check("k_commutation", _label(j), lambda: k_commutation_residual(j))
        run.check("spectrum", _label(j), lambda: spectrum_residual(j))
    for j in _spins(Fraction(30)):
        run.check("s_recursion", _label(j), lambda: s_recursion_check(j))
    for j in _spins(Fraction(10)):
        run.check("gamma_phase", _label(j), lambda: gamma_phase_residual(j))
    for lam in range(5):
        run.check("gamma_su3", f"lambda={lam}", lambda: gamma_su3_commutation_residual(gamma_su3(lam)))
    for lam in (10, 20, 30):
        # finite weights: the deviation stays below window/lambda
        run.check("su3_limit", f"lambda={lam} window={SU3_LIMIT_WINDOW}",
                  lambda: max(0.0, lam * su3_limit_deviation(lam, SU3_LIMIT_WINDOW) - SU3_LIMIT_WINDOW))


_SUITE_BUILDERS = {
    "su2": _su2_suite,
    "su3": _su3_suite,
    "su4": _su4_suite,
    "pauli": _pauli_suite,
    "gamma": _gamma_suite,
}


def run_suite(suite: str = "all", tolerances: Optional[Dict[str, float]] = None) -> List[Check]:
    """Run one suite, or every suite for ``'all'``.

    Parameters
    ----------
    suite : :obj:`str`
        One of ``all``, ``su2``, ``su3``, ``su4``, ``pauli``, ``gamma``.
    tolerances : :obj:`dict`, optional
        Tolerance table; the packaged table is used when omitted.

    Returns
    -------
    :obj:`list` of :obj:`Check`
        Checks in a fixed order.
    """
    names = SUITES if suite == "all" else (suite,)
    if any(name not in _SUITE_BUILDERS for name in names):
        raise InvalidRepresentationError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    table = load_tolerances() if tolerances is None else tolerances

    checks = []  # type: List[Check]
    for name in names:
        logger.info("Start suite: %s", name)
        run = _Runner(name, table)
        _SUITE_BUILDERS[name](run)
        failed = sum(1 for c in run.checks if not c.passed)
        logger.info("Finish suite: %s, %d checks, %d failed", name, len(run.checks), failed)
        checks.extend(run.checks)
    return checks
