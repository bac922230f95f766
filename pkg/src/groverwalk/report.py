"""Assembling analysis/factorization reports and serializing them deterministically."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from . import arcs
from .errors import GroverWalkError
from .factorizer import FactorizationResult, invertibility_gate
from .graphs import DrgVerdict, Graph, check_distance_regular, distance_matrices, verify_scheme_product
from .linalg import SpectralDecomposition, symmetric_eig
from .spectral import (
    is_edge_eigenvalue,
    skew_lambda,
    verify_span_membership,
    verify_walk_projections,
    walk_eigenpairs,
)

SKIPPED = "skipped"
IMAGINARY_TOL = 1e-12


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x}")
    text = format(x, ".17g")
    if text == "-0":
        text = "0"
    return text


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and every float printed to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    close = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(str(k), indent)}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _verdict_json(verdict: DrgVerdict) -> dict[str, Any]:
    out: dict[str, Any] = {"is_drg": verdict.is_drg, "intersection_array": None, "witness": None}
    if verdict.is_drg:
        b, c = verdict.numbers.intersection_array()
        out["intersection_array"] = {"b": b, "c": c}
    else:
        w = verdict.witness
        out["witness"] = {
            "reference_pair": list(w.reference_pair),
            "pair": list(w.pair),
            "distance": w.distance,
            "i": w.i,
            "j": w.j,
            "reference_count": w.reference_count,
            "count": w.count,
        }
    return out


def _spectrum_json(dec: SpectralDecomposition, k: int) -> list[dict[str, Any]]:
    rows = []
    for p in dec.pairs:
        theta = None if is_edge_eigenvalue(p.value, k) else math.acos(max(-1.0, min(1.0, p.value / k)))
        rows.append({"lambda": p.value, "multiplicity": p.multiplicity, "theta": theta})
    return rows


def identity_checks(X: Graph, verdict: DrgVerdict) -> dict[str, Any]:
    """Every exact combinatorial identity, keyed by a descriptive label.

    Checks that only make sense for distance-regular graphs are marked
    ``"skipped"`` otherwise.
    """
    space = arcs.build_arc_space(X)
    inc = arcs.verify_incidence_identities(space)
    checks: dict[str, Any] = {
        "incidence.tail_reversal_is_head": inc.tail_reversal_is_head,
        "incidence.grams_are_kI": inc.incidence_grams_are_kI,
        "incidence.cross_gram_is_adjacency": inc.cross_gram_is_adjacency,
        "incidence.head_tail_is_line_digraph": inc.head_tail_is_line_digraph,
    }
    ld = arcs.ld_distances(space)
    formula = np.array(
        [[arcs.ld_distance_formula(space, X.distances, a1, a2) for a2 in space.arcs] for a1 in space.arcs]
    )
    checks["line_digraph.distance_formula"] = bool(np.array_equal(formula, ld))
    ones = np.ones((X.n, X.n), dtype=np.int64)
    checks["line_digraph.head_J_tail_is_J"] = bool(
        np.array_equal(space.Dh.T @ ones @ space.Dt, np.ones((space.size, space.size), dtype=np.int64))
    )
    try:
        fam = arcs.distance_digraphs_bfs(space)
    except GroverWalkError:
        fam = None
    checks["distance_digraphs.sum_to_J"] = fam is not None
    checks["distance_digraphs.skew_dependence"] = fam is not None and bool(
        not np.any(fam.skews[0]) and not np.any(sum(fam.skews))
    )

    drg_only = (
        "scheme.product",
        "line_digraph.distance_regular",
        "distance_digraphs.formula_matches_bfs",
        "distance_digraphs.skew_commuting",
    )
    if not verdict.is_drg or fam is None:
        checks.update({key: SKIPPED for key in drg_only})
        return checks

    dm = distance_matrices(X)
    checks["scheme.product"] = verify_scheme_product(dm, verdict.numbers)
    try:
        arcs.digraph_intersection_numbers(space, fam)
        checks["line_digraph.distance_regular"] = True
    except GroverWalkError:
        checks["line_digraph.distance_regular"] = False
    formula_fam = arcs.distance_digraphs_formula(dm, space)
    checks["distance_digraphs.formula_matches_bfs"] = all(
        np.array_equal(a, b) for a, b in zip(formula_fam.matrices, fam.matrices)
    ) and len(formula_fam.matrices) == len(fam.matrices)
    checks["distance_digraphs.skew_commuting"] = arcs.check_skew_commuting(fam)
    return checks


def graph_summary(X: Graph) -> dict[str, Any]:
    return {
        "n": X.n,
        "k": X.degree,
        "diameter": X.diameter,
        "family": X.family,
        "edges": len(X.edges),
        "arcs": 2 * len(X.edges),
    }


def analysis_report(X: Graph) -> dict[str, Any]:
    verdict = check_distance_regular(X)
    dec = symmetric_eig(X.adjacency)
    return {
        "graph": graph_summary(X),
        "drg": _verdict_json(verdict),
        "spectrum": _spectrum_json(dec, X.degree),
        "invertible": invertibility_gate(X, dec),
        "checks": identity_checks(X, verdict),
    }


def spectral_checks(res: FactorizationResult) -> dict[str, Any]:
    space = res.walk.arc_space
    pairs = walk_eigenpairs(res.spectrum, space)
    checks: dict[str, Any] = {
        "walk.eigenprojections": verify_walk_projections(pairs, res.walk.U),
        "walk.projection_difference_imaginary": all(
            np.max(np.abs((p.F_plus - p.F_minus).real)) < IMAGINARY_TOL for p in pairs
        ),
    }
    span_ok = True
    for E in res.spectrum.pairs:
        try:
            verify_span_membership(skew_lambda(E, space), res.family)
        except GroverWalkError:
            span_ok = False
    checks["skew_lambda.span_membership"] = span_ok
    checks["generator.log_oracle"] = res.generator.oracle_error < 1e-9
    return checks


def factorization_json(res: FactorizationResult, tol: float) -> dict[str, Any]:
    gen = res.generator
    return {
        "t": list(res.t),
        "gram_rank": res.rank,
        "residual": res.residual,
        "product_error": res.product_error,
        "tol": tol,
        "passed": res.product_error < tol,
        "branch": gen.branch,
        "generator_exp_error": gen.exp_error,
        "oracle_error": gen.oracle_error,
        "contributions": [
            {"lambda": c.lam, "theta": c.theta, "angle": c.angle, "coefficient": c.coefficient}
            for c in gen.contributions
        ],
    }


def factorization_report(X: Graph, res: FactorizationResult, tol: float) -> dict[str, Any]:
    report = analysis_report(X)
    report["checks"].update(spectral_checks(res))
    report["factorization"] = factorization_json(res, tol)
    return report


def failed_checks(report: dict[str, Any]) -> list[str]:
    return sorted(key for key, val in report["checks"].items() if val is False)
