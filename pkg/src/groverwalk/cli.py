"""Command-line entry point.

Exit codes: 0 success, 2 input or hypothesis error, 3 numerical tolerance or
identity failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import report as rpt
from .arcs import build_arc_space
from .errors import HypothesisError, TheoremViolation, ValidationError
from .factorizer import PRODUCT_TOL, compute_factorization, grover_walk
from .graphs import FAMILIES, Graph, build_family
from .walks import ArcState, compare_evolutions

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
SIM_TOL = 1e-7


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def load_graph(path: str) -> Graph:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    return Graph.from_json(data)


def _emit(report: dict, report_path: str | None, summary: str) -> None:
    text = rpt.dumps(report) + "\n"
    if report_path:
        Path(report_path).write_text(text, encoding="utf-8")
        print(summary)
    else:
        sys.stdout.write(text)


def cmd_build(args: argparse.Namespace) -> int:
    graph = build_family(args.family, args.params)
    text = json.dumps(graph.to_json(), sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    report = rpt.analysis_report(graph)
    failed = rpt.failed_checks(report)
    drg = report["drg"]["is_drg"]
    summary = f"{graph.family or args.graph}: n={graph.n} k={graph.degree} drg={str(drg).lower()}"
    if failed:
        summary += f"; failed checks: {', '.join(failed)}"
    _emit(report, args.report, summary)
    return EXIT_NUMERIC if failed else EXIT_OK


def cmd_factorize(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    res = compute_factorization(graph, branch=args.branch)
    report = rpt.factorization_report(graph, res, args.tol)
    failed = rpt.failed_checks(report)
    ok = res.product_error < args.tol and not failed
    coeffs = ", ".join(f"{t:.12g}" for t in res.t)
    summary = (
        f"{graph.family or args.graph}: t = [{coeffs}] gram_rank={res.rank} "
        f"residual={res.residual:.3e} product_error={res.product_error:.3e} (tol {args.tol:g})"
    )
    if failed:
        summary += f"; failed checks: {', '.join(failed)}"
    _emit(report, args.report, summary)
    if not ok:
        print(f"error: product_error {res.product_error:.3e} not below tol {args.tol:g}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_simulate(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    if args.steps < 0 or args.steps % 2:
        raise ValidationError("--steps must be a non-negative even number")
    space = build_arc_space(graph)
    if not 0 <= args.start_arc < space.size:
        raise ValidationError(f"--start-arc {args.start_arc} outside 0..{space.size - 1}")
    res = compute_factorization(graph)
    walk = grover_walk(space)
    psi = ArcState.basis(space, args.start_arc)
    worst = 0.0
    for m in range(1 if args.steps else 0, args.steps // 2 + 1):
        dev = compare_evolutions(walk, res, psi, m)
        worst = max(worst, dev)
        print(f"m={m} steps={2 * m} deviation={dev:.3e}")
    return EXIT_OK if worst < SIM_TOL else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groverwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a named graph as JSON")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--params", type=int, nargs="*", default=[])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("analyze", help="distance-regularity and exact identity checks")
    p.add_argument("graph")
    p.add_argument("--report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("factorize", help="factor U^2 into commuting skew exponentials")
    p.add_argument("graph")
    p.add_argument("--tol", type=float, default=PRODUCT_TOL)
    p.add_argument("--report")
    p.add_argument("--branch", choices=("principal", "lifted"), default="principal")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("simulate", help="compare discrete and continuous evolution")
    p.add_argument("graph")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--start-arc", type=int, default=0)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as exc:
        return _fail(str(exc))
    except ValidationError as exc:
        return _fail(str(exc))
    except TheoremViolation as exc:
        return _fail(str(exc), EXIT_NUMERIC)


if __name__ == "__main__":
    sys.exit(main())
