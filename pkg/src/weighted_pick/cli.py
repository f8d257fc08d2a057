"""Command line front end.

Exit codes
----------
0   success (solvable / solved / not falsified / all items pass)
2   not solvable, or candidate disproved by an indefinite Gram matrix
3   Pick matrix positive but only necessary (input weight not Hardy)
4   Pick matrix singular; the degenerate parametrization is not implemented
5   counterexample reproduction has a failing item
6   solving requested for a non-Hardy input weight
64  unreadable or invalid input
65  candidate undefined at a grid point
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import EvaluationError, InvalidArgumentError, WeightedPickError
from .files import (encode_complex, encode_matrix, load_json, load_problem,
                    normalized_problem, parse_parameter, parse_rational)
from .pick import DEFAULT_PSD_TOL, PsdClass, solvability
from .solver import (DEFAULT_TRUNCATION, SchurParameter, choose_mu, solve_parametrized,
                     theta_identity_residual, theta_realization)
from .verify import GridSpec, check_contractive, check_interpolation, contractivity_witness, counterexample_report

EXIT_OK = 0
EXIT_NOT_SOLVABLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_SINGULAR = 4
EXIT_COUNTEREXAMPLE = 5
EXIT_UNSUPPORTED = 6
EXIT_USAGE = 64
EXIT_UNDEFINED = 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """``0.5``, ``0.3-0.2j`` or ``0.3,-0.2``."""
    s = text.strip().replace(" ", "")
    try:
        if "," in s:
            re_, im_ = s.split(",")
            return complex(float(re_), float(im_))
        return complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_grid(text: str) -> GridSpec:
    """``RADII[:ANGLES]``, e.g. ``0.3,0.6,0.85:8``."""
    radii, _, angles = text.partition(":")
    try:
        return GridSpec(tuple(float(r) for r in radii.split(",")), int(angles) if angles else 8)
    except (ValueError, InvalidArgumentError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        v = -1.0
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        v = -1
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help=f"relative PSD tolerance (default {DEFAULT_PSD_TOL:g})")
    common.add_argument("--truncation", type=_nonneg_int, default=None,
                        help=f"realization truncation J (default {DEFAULT_TRUNCATION})")
    common.add_argument("--mu", type=parse_complex, default=None, help="unimodular normalization point")
    common.add_argument("--grid", type=parse_grid, default=None, help="sampling grid RADII[:ANGLES]")
    common.add_argument("--emit-normalized", metavar="PATH", default=None,
                        help="write the parsed problem in normalized raw form")
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    parser = _Parser(prog="weighted-pick", description="Tangential interpolation by contractive multipliers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="Pick-matrix solvability test")
    p.add_argument("problem")

    p = sub.add_parser("solve", parents=[common], help="sample a solution")
    p.add_argument("problem")
    p.add_argument("--param", default=None, help="parameter file (default: central solution)")
    p.add_argument("--at", nargs="+", type=parse_complex, default=None, metavar="Z",
                   help="sample points (default: 0 and the NP nodes)")

    p = sub.add_parser("verify", parents=[common], help="test a candidate on a grid")
    p.add_argument("problem")
    p.add_argument("--candidate", required=True, help="rational candidate file, 'central', or param:<file>")

    p = sub.add_parser("counterexample", parents=[common], help="rerun the two-point A^2_2 -> A^2_3 example")
    return parser


# -- reporting -------------------------------------------------------------

def _fmt(z) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _fmt_matrix(M) -> str:
    M = np.atleast_2d(M)
    if M.shape == (1, 1):
        return _fmt(M[0, 0])
    return "[" + "; ".join(" ".join(_fmt(x) for x in row) for row in M) + "]"


def _settings(args, pf=None):
    opts = pf.options if pf is not None else {}
    tol = args.tol if args.tol is not None else opts.get("tol", DEFAULT_PSD_TOL)
    J = args.truncation if args.truncation is not None else opts.get("truncation", DEFAULT_TRUNCATION)
    mu = args.mu if args.mu is not None else opts.get("mu")
    grid = args.grid if args.grid is not None else opts.get("grid", GridSpec())
    return tol, J, mu, grid


def _emit(args, pf):
    if args.emit_normalized:
        Path(args.emit_normalized).write_text(json.dumps(normalized_problem(pf), indent=1) + "\n")


def _output(args, report: dict, lines: list, code: int) -> int:
    report["exit_code"] = code
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return code


def _pick_report(rep) -> dict:
    return {"pick_matrix": encode_matrix(rep.pick),
            "eigenvalues": list(rep.verdict.eigenvalues),
            "classification": rep.verdict.classification.value,
            "tolerance_used": rep.verdict.tolerance_used,
            "conclusive": rep.conclusive,
            "solvable": rep.solvable,
            "note": rep.note}


def check_exit_code(rep) -> int:
    if not rep.conclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.solvable else EXIT_NOT_SOLVABLE


# -- commands --------------------------------------------------------------

def cmd_check(args) -> int:
    pf = load_problem(args.problem)
    _emit(args, pf)
    tol, _, _, _ = _settings(args, pf)
    rep = solvability(pf.data, tol)
    report = {"command": "check", **_pick_report(rep)}
    lines = [f"Pick matrix: {_fmt_matrix(rep.pick)}",
             "eigenvalues: " + ", ".join(f"{v:.12g}" for v in rep.verdict.eigenvalues),
             f"classification: {rep.verdict.classification.value} (tolerance {rep.verdict.tolerance_used:.3g})",
             f"verdict: {rep.note}"]
    return _output(args, report, lines, check_exit_code(rep))


def _sample_points(args, pf):
    if args.at is not None:
        return list(args.at)
    pts = [0j] + list(pf.nodes or ())
    return list(dict.fromkeys(pts))


def _load_param(path, p, q) -> SchurParameter:
    if path is None:
        return SchurParameter.zero(p, q)
    return parse_parameter(load_json(path))


def _precondition_exit(pf, tol, command):
    """Exit code and report when the problem cannot be solved, else None."""
    rep = solvability(pf.data, tol)
    report = {"command": command, **_pick_report(rep)}
    if rep.solvable is False:
        return EXIT_NOT_SOLVABLE, report, [f"not solvable: Pick matrix is {rep.verdict.classification.value}"]
    if not pf.data.alpha.is_hardy:
        return EXIT_UNSUPPORTED, report, [
            "unsupported: solutions are only constructed for the Hardy input weight "
            f"(Pick matrix is {rep.verdict.classification.value}; positivity is necessary only)"]
    if rep.verdict.classification is PsdClass.POSITIVE_SEMIDEFINITE:
        return EXIT_SINGULAR, report, [
            "Pick matrix is singular: the degenerate-case parametrization is not implemented"]
    return None


def cmd_solve(args) -> int:
    pf = load_problem(args.problem)
    _emit(args, pf)
    tol, J, mu, grid = _settings(args, pf)
    data = pf.data
    pts = _sample_points(args, pf)
    for z in pts:
        if not abs(z) < 1:
            raise InvalidArgumentError(f"sample point {z} is outside the open unit disk")
    param = _load_param(args.param, data.p, data.q)
    bad = _precondition_exit(pf, tol, "solve")
    if bad is not None:
        code, report, lines = bad
        return _output(args, report, lines, code)

    mu = choose_mu(data.T) if mu is None else mu
    S = solve_parametrized(data, param, mu=mu, tol=tol)
    samples, lines = [], [f"mu: {_fmt(mu)}"]
    for z in pts:
        try:
            val = S.eval(z)
            samples.append({"z": encode_complex(z), "value": encode_matrix(val)})
            lines.append(f"S({_fmt(z)}) = {_fmt_matrix(val)}")
        except EvaluationError as exc:
            samples.append({"z": encode_complex(z), "value": None, "error": str(exc)})
            lines.append(f"S({_fmt(z)}) undefined: {exc}")
    interp = check_interpolation(data, S)
    lines.append(f"interpolation residual: {interp.residual:.3g}")
    report = {"command": "solve", "mu": encode_complex(mu), "samples": samples,
              "interpolation_residual": interp.residual, "tail_estimate": interp.tail_estimate}
    try:
        gv = check_contractive(S, data.alpha, data.beta, grid.with_points(pf.nodes or ()), tol)
        report["grid_classification"] = gv.classification.value
        report["grid_min_eigenvalue"] = gv.min_eigenvalue
        lines.append(f"grid contractivity: {gv.classification.value} (min eigenvalue {gv.min_eigenvalue:.3g})")
    except EvaluationError as exc:
        report["grid_classification"] = None
        lines.append(f"grid contractivity: solution undefined at {exc.z}")
    th = theta_realization(data, mu=mu, truncation=J, tol=tol)
    report["theta_identity_residual"] = theta_identity_residual(th, 0.3, -0.2j)
    report["truncation"] = J
    lines.append(f"realization identity residual (J={J}): {report['theta_identity_residual']:.3g}")
    return _output(args, report, lines, EXIT_OK)


def cmd_verify(args) -> int:
    pf = load_problem(args.problem)
    _emit(args, pf)
    tol, _, mu, grid = _settings(args, pf)
    data = pf.data
    cand = args.candidate
    if cand == "central" or cand.startswith("param:"):
        param = _load_param(cand[6:] if cand.startswith("param:") else None, data.p, data.q)
        bad = _precondition_exit(pf, tol, "verify")
        if bad is not None:
            code, report, lines = bad
            return _output(args, report, lines, code)
        S = solve_parametrized(data, param, mu=mu, tol=tol)
    else:
        S = parse_rational(load_json(cand))
    if S.shape != (data.p, data.q):
        raise InvalidArgumentError(f"candidate is {S.shape[0]}x{S.shape[1]}, problem needs {data.p}x{data.q}")
    grid = grid.with_points(pf.nodes or ())
    pts = grid.points()
    report = {"command": "verify", "candidate": cand, "grid_points": len(pts)}
    try:
        gv = check_contractive(S, data.alpha, data.beta, grid, tol)
    except EvaluationError as exc:
        report["undefined_at"] = encode_complex(exc.z) if exc.z is not None else None
        return _output(args, report, [f"candidate undefined on the grid: {exc}"], EXIT_UNDEFINED)
    report.update({"classification": gv.classification.value, "min_eigenvalue": gv.min_eigenvalue,
                   "tolerance_used": gv.tolerance_used})
    lines = [f"grid Gram matrix ({len(pts)} points): {gv.classification.value}",
             f"min eigenvalue {gv.min_eigenvalue:.3g} (tolerance {gv.tolerance_used:.3g})"]
    interp = check_interpolation(data, S)
    report["interpolation_residual"] = interp.residual
    lines.append(f"interpolation residual: {interp.residual:.3g}")
    if gv.classification is PsdClass.INDEFINITE:
        pair = contractivity_witness(gv, pts, data.p)
        report["witness"] = [encode_complex(z) for z in pair]
        lines.append("disproved; witness points " + ", ".join(_fmt(z) for z in pair))
        return _output(args, report, lines, EXIT_NOT_SOLVABLE)
    lines.append("not falsified on the grid")
    return _output(args, report, lines, EXIT_OK)


def cmd_counterexample(args) -> int:
    tol = args.tol if args.tol is not None else 5e-4
    rep = counterexample_report(tol)
    report = {"command": "counterexample", **rep.to_dict()}
    lines = [rep.summary()]
    d = rep.items["d"]
    lines.append(f"Khat(0.1,0.1) unscaled-border cascade {d['khat_unscaled_border']:.6f}, "
                 f"Schur complement {d['khat_schur_complement']:+.6f}")
    lines.append("Pick eigenvalues: " + ", ".join(f"{v:.12g}" for v in rep.items["a"]["eigenvalues"]))
    if rep.failed:
        lines.append("failed items: " + ", ".join(f"({k})" for k in rep.failed))
    return _output(args, report, lines, EXIT_OK if rep.passed else EXIT_COUNTEREXAMPLE)


_COMMANDS = {"check": cmd_check, "solve": cmd_solve, "verify": cmd_verify, "counterexample": cmd_counterexample}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (WeightedPickError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
