#!/usr/bin/env python
"""``suphase`` command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
residual breach.
"""
import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import (RootLabel, cartesian_embedding, commutation_residual, enumerate_basis,
                      generator_matrix, generator_set, hermitian_pairing_residual, weight_of)
from .config import load_sweep_config, load_tolerances
from .errors import FitError, ResidualBreach, SuphaseError
from .phase import (DEFAULT_ROOTS, additivity_solve, complementarity_check, complementary_completion_search,
                    complementary_solution, decay_fit, gamma_phase_residual, gamma_su2,
                    gamma_su2_commutation_residual, gamma_su3, gamma_su3_commutation_residual,
                    hermitize_check, intertwiner,
                    k_commutation_residual, nonhermiticity_witness, pauli_generators,
                    pauli_order_residual, pauli_relation_residuals, phase_hermitian, phase_operator,
                    positive_factor, s_recursion_check, spectrum_residual, su3_limit_deviation, sweep)
from .phase.complementarity import SIMPLEST_BETA, SIMPLEST_GAMMA
from .report import (SWEEP_COLUMNS, MatrixSink, ReportEnvelope, emit, encode_complex, encode_fraction,
                     encode_matrix, rows_to_csv)
from .utils import as_spin, max_abs, unitarity_residual
from .verification import SUITES, run_suite

logger = logging.getLogger(__name__)

PHASE_TOLERANCE = 1e-10
EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_BREACH = 0, 1, 2, 3


class UsageError(SuphaseError):
    pass


def _root(text: str) -> RootLabel:
    return RootLabel.parse(text)


def _spin(text: str) -> Fraction:
    return as_spin(text)


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', choices=['json', 'csv'], default=None,
                        help='output format (default: json)')
    parser.add_argument('--out', type=Path, help='write the report to this file instead of stdout')
    parser.add_argument('--verbose', action='store_true', help='debug logging on stderr')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='suphase',
                                     description="Phase operators of symmetric su(n) irreps")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    basis = sub.add_parser('basis', help='ordered boson basis with weights')
    basis.add_argument('--n', type=int, default=3)
    basis.add_argument('--lambda', dest='lam', type=int, required=True)
    _output_options(basis)

    gens = sub.add_parser('gens', help='generator matrices C_ij and h_k')
    gens.add_argument('--n', type=int, default=3)
    gens.add_argument('--lambda', dest='lam', type=int, required=True)
    _output_options(gens)

    phases = sub.add_parser('phases', help='phase operator E, positive factor D and phase φ')
    phases.add_argument('--n', type=int, default=3)
    phases.add_argument('--lambda', dest='lam', type=int, required=True)
    phases.add_argument('--root', type=_root, action='append', help='i,j (default 1,2)')
    phases.add_argument('--convention', choices=['plus', 'paper-sign', 'complementary'], default='plus')
    phases.add_argument('--beta', type=float, default=SIMPLEST_BETA)
    phases.add_argument('--gamma', type=float, default=SIMPLEST_GAMMA)
    _output_options(phases)

    sweep_ = sub.add_parser('sweep', help='non-commutativity norm over a range of lambda')
    sweep_.add_argument('--config', type=Path, help='YAML file with sweep parameters')
    sweep_.add_argument('--n', type=int)
    sweep_.add_argument('--from', dest='lam_min', type=int)
    sweep_.add_argument('--to', dest='lam_max', type=int)
    sweep_.add_argument('--root', type=_root, action='append', help='i,j; give twice for the pair')
    sweep_.add_argument('--convention', choices=['plus', 'paper-sign', 'complementary'])
    sweep_.add_argument('--threads', type=int)
    sweep_.add_argument('--fit-method', dest='fit_method', choices=['leading', 'loglog'])
    _output_options(sweep_)

    pauli = sub.add_parser('pauli', help='generalized Pauli matrices and complementary phases')
    pauli.add_argument('--beta', type=float, default=SIMPLEST_BETA)
    pauli.add_argument('--gamma', type=float, default=SIMPLEST_GAMMA)
    pauli.add_argument('--search-lambda', dest='search_lam', type=int, default=1,
                       help='su(3) irrep (lambda,0) for the complementary completion search, 1..5')
    _output_options(pauli)

    gamma = sub.add_parser('gamma', help='coherent-state realization and intertwiner K')
    target = gamma.add_mutually_exclusive_group(required=True)
    target.add_argument('--j', type=_spin, help='su(2) spin')
    target.add_argument('--lambda', dest='lam', type=int, help='su(3) irrep (lambda,0)')
    gamma.add_argument('--window', type=int, default=2,
                       help='weight window |x|, |y| for the large-lambda deviation')
    _output_options(gamma)

    verify = sub.add_parser('verify', help='run invariant suites')
    verify.add_argument('--suite', choices=('all',) + SUITES, default='all')
    verify.add_argument('--tolerances', type=Path, help='YAML file overriding packaged tolerances')
    _output_options(verify)
    return parser


def _require_json(args: argparse.Namespace) -> None:
    if args.format == 'csv':
        raise UsageError(f"{args.command} has no CSV form; use --format json")


def cmd_basis(args: argparse.Namespace) -> str:
    basis = enumerate_basis(args.n, args.lam)
    rows = []  # type: List[Dict[str, Any]]
    for k, state in enumerate(basis.states):
        weight = weight_of(state).components
        row = {"index": k, "ket": state.ket(), "occupations": list(state.occupations),
               "weight": list(weight)}  # type: Dict[str, Any]
        if args.n == 3:
            row["cartesian"] = list(cartesian_embedding(weight_of(state)))
        rows.append(row)

    if args.format == 'csv':
        flat = [{"index": r["index"], "ket": r["ket"],
                 "occupations": " ".join(map(str, r["occupations"])),
                 "weight": " ".join(map(str, r["weight"]))} for r in rows]
        return rows_to_csv(["index", "ket", "occupations", "weight"], flat)

    envelope = ReportEnvelope(command="basis", parameters={"n": args.n, "lambda": args.lam},
                              results={"dimension": basis.dimension, "states": rows})
    return envelope.to_json()


def cmd_gens(args: argparse.Namespace) -> str:
    _require_json(args)
    gens = generator_set(enumerate_basis(args.n, args.lam))
    sink = MatrixSink(args.out, "gens")
    results = {f"C{i}{j}": sink.put(f"C{i}{j}", m) for (i, j), m in sorted(gens.ladders.items())}
    results.update({f"h{k}": sink.put(f"h{k}", h) for k, h in enumerate(gens.cartans, start=1)})

    tolerance = load_tolerances()["commutation"]
    residuals = {"commutation": commutation_residual(gens),
                 "hermitian_pairing": hermitian_pairing_residual(gens)}
    if residuals["commutation"] > tolerance:
        raise ResidualBreach("commutation", residuals["commutation"], tolerance)
    envelope = ReportEnvelope(command="gens", parameters={"n": args.n, "lambda": args.lam},
                              results=results, residuals=residuals)
    return envelope.to_json()


def cmd_phases(args: argparse.Namespace) -> str:
    _require_json(args)
    roots = args.root or [DEFAULT_ROOTS[0]]
    if len(roots) != 1:
        raise UsageError("phases takes a single --root")
    root = roots[0]

    basis = enumerate_basis(args.n, args.lam)
    c = generator_matrix(basis, root.i, root.j)
    e = phase_operator(basis, root, args.convention, args.beta, args.gamma)
    d = positive_factor(c)
    phi = phase_hermitian(e)

    residuals = {"unitarity": unitarity_residual(e), "polar_identity": max_abs(e @ d - c.entries)}
    for name, value in residuals.items():
        if value >= PHASE_TOLERANCE:
            raise ResidualBreach(name, value, PHASE_TOLERANCE)

    sink = MatrixSink(args.out, "phases")
    parameters = {"n": args.n, "lambda": args.lam, "root": str(root), "convention": args.convention}
    if args.convention == 'complementary':
        parameters.update({"beta": args.beta, "gamma": args.gamma})
    envelope = ReportEnvelope(command="phases", parameters=parameters,
                              results={"E": sink.put("E", e), "D": sink.put("D", d), "phi": sink.put("phi", phi)},
                              residuals=residuals)
    return envelope.to_json()


def _sweep_settings(args: argparse.Namespace) -> Dict[str, Any]:
    settings = {"n": 3, "lambda_min": None, "lambda_max": None, "roots": None,
                "convention": "plus", "threads": 1, "format": "json",
                "fit_method": "leading"}  # type: Dict[str, Any]
    if args.config is not None:
        settings.update(load_sweep_config(args.config))

    overrides = {"n": args.n, "lambda_min": args.lam_min, "lambda_max": args.lam_max,
                 "roots": args.root, "convention": args.convention, "threads": args.threads,
                 "format": args.format, "fit_method": args.fit_method}
    settings.update({k: v for k, v in overrides.items() if v is not None})

    if settings["lambda_min"] is None or settings["lambda_max"] is None:
        raise UsageError("sweep needs --from and --to (or lambda_min/lambda_max in --config)")
    roots = settings["roots"] or list(DEFAULT_ROOTS)
    roots = [r if isinstance(r, RootLabel) else RootLabel.parse(str(r)) for r in roots]
    if len(roots) != 2:
        raise UsageError("sweep needs exactly two --root values")
    settings["roots"] = roots
    return settings


def cmd_sweep(args: argparse.Namespace) -> str:
    settings = _sweep_settings(args)
    root_a, root_b = settings["roots"]
    reports = sweep(settings["n"], settings["lambda_min"], settings["lambda_max"], root_a, root_b,
                    settings["convention"], settings["threads"])

    rows = [{"lambda": r.lam, "dimension": r.dimension, "raw_norm": r.raw_norm,
             "normalized_norm": r.normalized_norm, "formula_value": encode_fraction(r.formula_value),
             "difference": r.difference, "fixed_points": r.fixed_point_count,
             "trace_identity_residual": r.trace_identity_residual} for r in reports]

    fit_points = [r for r in reports if r.lam >= 2]
    try:
        exponent = decay_fit(fit_points, settings["fit_method"])  # type: Optional[float]
    except FitError as e:
        logger.warning("No decay fit: %s", e)
        exponent = None

    if settings["format"] == 'csv':
        return rows_to_csv(SWEEP_COLUMNS, rows, trailer={"decay_exponent": exponent})

    parameters = {"n": settings["n"], "lambda_min": settings["lambda_min"],
                  "lambda_max": settings["lambda_max"], "roots": [str(root_a), str(root_b)],
                  "convention": reports[0].convention if reports else settings["convention"],
                  "fit_method": settings["fit_method"]}
    residuals = {"trace_identity": max((r.trace_identity_residual for r in reports), default=0.0)}
    envelope = ReportEnvelope(command="sweep", parameters=parameters,
                              results={"rows": rows, "decay_exponent": exponent}, residuals=residuals)
    return envelope.to_json()


def cmd_pauli(args: argparse.Namespace) -> str:
    _require_json(args)
    pair = pauli_generators(3)
    solution = complementary_solution(args.beta, args.gamma)
    relations = pauli_relation_residuals(pair)

    results = {
        "omega": encode_complex(pair.omega),
        "X": encode_matrix(pair.X),
        "Z": encode_matrix(pair.Z),
        "E12": encode_matrix(solution.E12),
        "E23": encode_matrix(solution.E23),
        "E13": encode_matrix(solution.E13),
        "additive": solution.additive,
        "additive_solutions": [{"beta": s.beta, "gamma": s.gamma, "simplest": s.simplest}
                               for s in additivity_solve()],
        "completion_search": complementary_completion_search(args.search_lam)._asdict(),
    }
    residuals = {f"relation k={k} l={l}": v for (k, l), v in relations.items()}
    residuals["order"] = pauli_order_residual(pair)
    for name in ("E12", "E23"):
        residuals[f"complementarity {name}"] = complementarity_check(getattr(solution, name))
    residuals["E13-E12.E23"] = max_abs(solution.E13 - solution.E12 @ solution.E23)

    parameters = {"beta": args.beta, "gamma": args.gamma, "search_lambda": args.search_lam}
    envelope = ReportEnvelope(command="pauli", parameters=parameters, results=results, residuals=residuals)
    return envelope.to_json()


def cmd_gamma(args: argparse.Namespace) -> str:
    _require_json(args)
    sink = MatrixSink(args.out, "gamma")
    if args.j is not None:
        g = gamma_su2(args.j)
        k = intertwiner(args.j)
        results = {"h": sink.put("h", g.h), "e_plus": sink.put("e_plus", g.e_plus),
                   "e_minus": sink.put("e_minus", g.e_minus), "K": sink.put("K", k.K),
                   "nonhermiticity_witness": nonhermiticity_witness(g)}
        residuals = {"commutation": float(gamma_su2_commutation_residual(g)),
                     "hermitize": hermitize_check(args.j),
                     "s_recursion": s_recursion_check(args.j),
                     "k_commutation": k_commutation_residual(args.j),
                     "spectrum": spectrum_residual(args.j),
                     "gamma_phase": gamma_phase_residual(args.j)}
        parameters = {"j": str(args.j)}  # type: Dict[str, Any]
    else:
        g3 = gamma_su3(args.lam)
        results = {"h1": sink.put("h1", g3.h1), "h2": sink.put("h2", g3.h2)}
        results.update({f"C{i}{j}": sink.put(f"C{i}{j}", m) for (i, j), m in sorted(g3.ladders.items())})
        results["limit_deviation"] = su3_limit_deviation(args.lam, args.window) if args.lam > 0 else None
        residuals = {"commutation": gamma_su3_commutation_residual(g3)}
        parameters = {"lambda": args.lam, "window": args.window}

    envelope = ReportEnvelope(command="gamma", parameters=parameters, results=results, residuals=residuals)
    return envelope.to_json()


def cmd_verify(args: argparse.Namespace) -> Tuple[str, bool]:
    checks = run_suite(args.suite, load_tolerances(args.tolerances))
    ok = all(c.passed for c in checks)
    for c in checks:
        logger.info("%s %s %s: %.3e", "PASS" if c.passed else "FAIL", c.suite, c.name, c.residual)

    if args.format == 'csv':
        columns = ["suite", "name", "residual", "tolerance", "passed"]
        return rows_to_csv(columns, [c.to_dict() for c in checks]), ok

    envelope = ReportEnvelope(command="verify", parameters={"suite": args.suite},
                              results={"checks": [c.to_dict() for c in checks],
                                       "passed": sum(c.passed for c in checks),
                                       "failed": sum(not c.passed for c in checks)})
    return envelope.to_json(), ok


COMMANDS = {
    'basis': cmd_basis,
    'gens': cmd_gens,
    'phases': cmd_phases,
    'sweep': cmd_sweep,
    'pauli': cmd_pauli,
    'gamma': cmd_gamma,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    logger.info("Start %s", args.command)

    ok = True
    try:
        if args.command == 'verify':
            text, ok = cmd_verify(args)
        else:
            text = COMMANDS[args.command](args)
    except ResidualBreach as e:
        logger.error("Residual breach: %s", e)
        return EXIT_BREACH
    except (SuphaseError, ValueError) as e:
        print(f"suphase {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    emit(text, args.out)
    logger.info("Finish %s", args.command)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


if __name__ == '__main__':
    sys.exit(main())
