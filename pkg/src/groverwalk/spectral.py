"""Lifting eigenprojections of A(X) to eigenprojections of the Grover walk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arcs import ArcSpace, DistanceDigraphFamily
from .errors import InternalConsistencyError, TheoremViolation, ValidationError
from .graphs import DistanceMatrixSet
from .linalg import EigenPair, Expansion, SpectralDecomposition, expand_in_basis

PROJECTOR_TOL = 1e-9
TRACE_TOL = 1e-8
CONJUGATE_TOL = 1e-12
SPAN_TOL = 1e-9
CLASS_TOL = 1e-9
# |lambda| within this fraction of k counts as +-k
EDGE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class WalkEigenpair:
    """Eigenprojections of U for ``e^{i theta}`` and ``e^{-i theta}``, ``lam = k cos(theta)``."""

    lam: float
    theta: float
    multiplicity: int
    F_plus: np.ndarray
    F_minus: np.ndarray


@dataclass(frozen=True, eq=False)
class SkewLambda:
    lam: float
    S: np.ndarray
    # ||F_plus - F_minus - i/(k sin theta) S||_F, None when lam = +-k
    scalar_defect: float | None = None


@dataclass(frozen=True, eq=False)
class DualEigenvalues:
    values: tuple[float, ...]
    q: np.ndarray


def is_edge_eigenvalue(lam: float, k: int) -> bool:
    return abs(abs(lam) - k) <= EDGE_TOL * k


def walk_eigenprojections(E: EigenPair, k: int, S: ArcSpace) -> WalkEigenpair:
    lam = E.value
    if abs(lam) >= k or is_edge_eigenvalue(lam, k):
        raise ValidationError(f"eigenvalue {lam} is not strictly inside (-{k}, {k})")
    theta = math.acos(lam / k)
    Dt = S.Dt.astype(float)
    Dh = S.Dh.astype(float)
    w = np.exp(1j * theta)
    scale = 1.0 / (2.0 * k * math.sin(theta) ** 2)
    F_plus = scale * (Dt - w * Dh).T @ E.projector @ (Dt - np.conj(w) * Dh)
    F_minus = scale * (Dt - np.conj(w) * Dh).T @ E.projector @ (Dt - w * Dh)
    pair = WalkEigenpair(lam, theta, E.multiplicity, F_plus, F_minus)
    _check_walk_pair(pair)
    return pair


def _check_walk_pair(pair: WalkEigenpair) -> None:
    F = pair.F_plus
    if np.linalg.norm(F - F.conj().T) >= PROJECTOR_TOL:
        raise TheoremViolation(f"F_plus for lambda={pair.lam} is not Hermitian")
    if np.linalg.norm(F @ F - F) >= PROJECTOR_TOL:
        raise TheoremViolation(f"F_plus for lambda={pair.lam} is not idempotent")
    if abs(np.trace(F) - pair.multiplicity) >= TRACE_TOL:
        raise TheoremViolation(f"trace of F_plus for lambda={pair.lam} is not the multiplicity")
    if np.max(np.abs(pair.F_minus - F.conj())) >= CONJUGATE_TOL:
        raise InternalConsistencyError("F_minus is not the conjugate of F_plus")


def walk_eigenpairs(dec: SpectralDecomposition, S: ArcSpace) -> list[WalkEigenpair]:
    """Walk eigenprojections for every eigenvalue of A(X) strictly inside (-k, k)."""
    k = S.graph.degree
    return [walk_eigenprojections(E, k, S) for E in dec.pairs if not is_edge_eigenvalue(E.value, k)]


def verify_walk_projections(pairs: Sequence[WalkEigenpair], U: np.ndarray, tol: float = PROJECTOR_TOL) -> bool:
    projectors = []
    for p in pairs:
        w = np.exp(1j * p.theta)
        if np.linalg.norm(U @ p.F_plus - w * p.F_plus) >= tol:
            return False
        if np.linalg.norm(U @ p.F_minus - np.conj(w) * p.F_minus) >= tol:
            return False
        projectors += [p.F_plus, p.F_minus]
    for a in range(len(projectors)):
        for b in range(a + 1, len(projectors)):
            if np.linalg.norm(projectors[a] @ projectors[b]) >= tol:
                return False
    return True


def unit_eigenprojections(pairs: Sequence[WalkEigenpair], U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the +1 and -1 eigenspaces of U.

    Obtained from the complement of the non-real eigenspaces, split by the
    action of U there (U^2 = I on that complement).
    """
    rest = np.eye(U.shape[0]) - sum((p.F_plus + p.F_minus for p in pairs), np.zeros(U.shape, dtype=complex))
    rest = rest.real
    return rest @ (np.eye(U.shape[0]) + U) / 2.0, rest @ (np.eye(U.shape[0]) - U) / 2.0


def skew_lambda(E: EigenPair, S: ArcSpace) -> SkewLambda:
    """``S_lam = Dt^T E Dh - Dh^T E Dt``.

    Inside (-k, k) the difference of the two walk projections equals
    ``i/(k sin theta) * S_lam``; that scalar is re-checked here.
    """
    Dt = S.Dt.astype(float)
    Dh = S.Dh.astype(float)
    S_lam = Dt.T @ E.projector @ Dh - Dh.T @ E.projector @ Dt
    k = S.graph.degree
    defect = None
    if not is_edge_eigenvalue(E.value, k):
        pair = walk_eigenprojections(E, k, S)
        scalar = 1j / (k * math.sin(pair.theta))
        defect = float(np.linalg.norm(pair.F_plus - pair.F_minus - scalar * S_lam))
        if defect >= PROJECTOR_TOL:
            raise TheoremViolation(f"F_plus - F_minus is not i/(k sin theta) S_lambda for lambda={E.value}")
    return SkewLambda(E.value, S_lam, defect)


def dual_eigenvalues(dec: SpectralDecomposition, dm: DistanceMatrixSet) -> DualEigenvalues:
    """Coefficients ``q_r(i)`` with ``E_r = (1/n) sum_i q_r(i) A_i``, read off projector entries."""
    n = dm.matrices[0].shape[0]
    q = np.zeros((len(dec.pairs), dm.diameter + 1))
    for r, pair in enumerate(dec.pairs):
        E = pair.projector
        for i, A in enumerate(dm.matrices):
            entries = E[A == 1]
            if entries.max() - entries.min() > CLASS_TOL:
                raise ValidationError(
                    f"projector for eigenvalue {pair.value} is not constant on distance class {i}"
                )
            q[r, i] = n * float(entries.mean())
        recon = sum(q[r, i] * A for i, A in enumerate(dm.matrices)) / n
        if np.linalg.norm(E - recon) >= CLASS_TOL:
            raise InternalConsistencyError(f"dual eigenvalues do not reconstruct E for {pair.value}")
    q.setflags(write=False)
    return DualEigenvalues(tuple(dec.values), q)


def verify_span_membership(sl: SkewLambda, fam: DistanceDigraphFamily) -> Expansion:
    """Expand ``S_lam`` in ``S(Y_1)..S(Y_d)``; a residual above tolerance is a bug."""
    basis = fam.skews[1 : fam.diameter + 1]
    exp = expand_in_basis(sl.S, basis)
    if exp.residual >= SPAN_TOL:
        raise TheoremViolation(
            f"S_lambda for lambda={sl.lam} is not in the span of the distance skews (residual {exp.residual:.3e})"
        )
    return exp
