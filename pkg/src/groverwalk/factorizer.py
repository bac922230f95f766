"""Grover walk operator and the factorization of its square into commuting
skew exponentials over the distance digraphs of the line digraph."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.linalg import schur

from .arcs import ArcSpace, DistanceDigraphFamily, build_arc_space, distance_digraphs_bfs, line_digraph_adjacency
from .errors import HypothesisError, InternalConsistencyError, TheoremViolation, ValidationError
from .graphs import Graph, check_distance_regular
from .linalg import SpectralDecomposition, expand_in_basis, expm_skew, symmetric_eig
from .spectral import is_edge_eigenvalue, skew_lambda, walk_eigenprojections

UNITARY_TOL = 1e-12
GATE_TOL = 1e-8
GENERATOR_TOL = 1e-9
SPAN_TOL = 1e-9
COMMUTE_TOL = 1e-9
PRODUCT_TOL = 1e-8

Branch = Literal["principal", "lifted"]


@dataclass(frozen=True, eq=False)
class GroverWalk:
    arc_space: ArcSpace
    U: np.ndarray


def grover_walk(S: ArcSpace) -> GroverWalk:
    """``U = (2/k) A(LD(X)) - R``, cross-checked against ``R ((2/k) Dt^T Dt - I)``."""
    k = S.graph.degree
    if k < 2:
        raise ValidationError(f"Grover walk needs degree >= 2, got {k}")
    L = line_digraph_adjacency(S).astype(float)
    R = S.R.astype(float)
    U = (2.0 / k) * L - R
    Dt = S.Dt.astype(float)
    coin = (2.0 / k) * Dt.T @ Dt - np.eye(S.size)
    if np.linalg.norm(U - R @ coin) >= UNITARY_TOL:
        raise InternalConsistencyError("the two expressions for U disagree")
    if np.linalg.norm(U.T @ U - np.eye(S.size)) >= UNITARY_TOL:
        raise InternalConsistencyError("U is not orthogonal")
    U.setflags(write=False)
    return GroverWalk(S, U)


def invertibility_gate(X: Graph, dec: SpectralDecomposition) -> bool:
    """True iff no eigenvalue of A(X) is (numerically) zero."""
    return all(abs(v) > GATE_TOL * X.degree for v in dec.values)


@dataclass(frozen=True)
class Contribution:
    lam: float
    theta: float
    # eigenphase of U^2 on the e^{i theta} eigenspace, on the chosen branch
    angle: float
    coefficient: float


@dataclass(frozen=True, eq=False)
class Generator:
    """Real skew ``K`` with ``exp(K) = U^2``; ``K = -sum coefficient * S_lam``."""

    K: np.ndarray
    contributions: tuple[Contribution, ...]
    branch: str
    exp_error: float
    oracle_error: float


def _branch_angle(theta: float, branch: Branch) -> float:
    angle = 2.0 * theta
    if branch == "principal" and angle > math.pi:
        angle -= 2.0 * math.pi
    return angle


def log_oracle(U: np.ndarray, branch: Branch = "principal") -> np.ndarray:
    """Logarithm of ``U^2`` by complex Schur diagonalization (U is normal).

    ``principal`` takes the principal log of ``U^2``. ``lifted`` doubles the
    eigenphases of U in (-pi, pi) and sends U's -1 eigenspace to 0.
    """
    target = U @ U if branch == "principal" else U
    T, Z = schur(target.astype(complex), output="complex")
    eig = np.diag(T)
    if branch == "principal":
        phases = np.angle(eig)
        if np.any(np.abs(np.abs(phases) - math.pi) < 1e-6):
            raise HypothesisError("U^2 has eigenvalue -1; no principal logarithm")
    else:
        phases = np.angle(eig)
        phases = np.where(np.abs(np.abs(phases) - math.pi) < 1e-6, 0.0, 2.0 * phases)
    L = (Z * (1j * phases)) @ Z.conj().T
    if np.max(np.abs(L.imag)) > 1e-9:
        raise InternalConsistencyError("logarithm oracle is not real")
    return L.real


def build_generator(
    dec: SpectralDecomposition,
    S: ArcSpace,
    k: int | None = None,
    branch: Branch = "principal",
    U: np.ndarray | None = None,
) -> Generator:
    """Skew generator of ``U^2`` assembled from the skew matrices ``S_lam``.

    Each eigenvalue ``lam = k cos(theta)`` with ``0 < theta < pi`` contributes
    ``-(angle / (k sin theta)) S_lam`` where ``angle`` is ``2 theta`` taken on
    the requested branch. ``lam = +-k`` contribute nothing.
    """
    X = S.graph
    k = X.degree if k is None else k
    if branch not in ("principal", "lifted"):
        raise ValidationError(f"unknown branch {branch!r}")
    if not invertibility_gate(X, dec):
        raise HypothesisError("adjacency matrix singular: the factorization needs an invertible A(X)")
    if U is None:
        U = grover_walk(S).U

    K = np.zeros((S.size, S.size))
    contributions = []
    for E in dec.pairs:
        if is_edge_eigenvalue(E.value, k):
            continue
        pair = walk_eigenprojections(E, k, S)
        angle = _branch_angle(pair.theta, branch)
        coeff = angle / (k * math.sin(pair.theta))
        K -= coeff * skew_lambda(E, S).S
        contributions.append(Contribution(E.value, pair.theta, angle, coeff))
    K = (K - K.T) / 2.0
    K.setflags(write=False)

    exp_error = float(np.linalg.norm(expm_skew(K) - U @ U))
    if exp_error >= GENERATOR_TOL:
        raise TheoremViolation(f"exp(K) differs from U^2 by {exp_error:.3e}")
    oracle_error = float(np.linalg.norm(K - log_oracle(U, branch)))
    if oracle_error >= GENERATOR_TOL:
        raise TheoremViolation(f"generator differs from the logarithm oracle by {oracle_error:.3e}")
    return Generator(K, tuple(contributions), branch, exp_error, oracle_error)


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    """``U^2 = prod_i exp(t_i S(Y_i))`` over ``i = 1..d``."""

    t: tuple[float, ...]
    residual: float
    rank: int
    per_factor: tuple[np.ndarray, ...]
    product_error: float
    skews: tuple[np.ndarray, ...]
    walk: GroverWalk
    generator: Generator
    family: DistanceDigraphFamily
    spectrum: SpectralDecomposition

    def product(self, order=None) -> np.ndarray:
        order = range(len(self.per_factor)) if order is None else order
        out = np.eye(self.walk.U.shape[0])
        for i in order:
            out = out @ self.per_factor[i]
        return out


def compute_factorization(X: Graph, branch: Branch = "principal") -> FactorizationResult:
    """Run the whole pipeline without judging the final product error."""
    verdict = check_distance_regular(X)
    if not verdict.is_drg:
        raise HypothesisError("graph is not distance-regular")
    dec = symmetric_eig(X.adjacency)
    if not invertibility_gate(X, dec):
        raise HypothesisError("adjacency matrix singular: the factorization needs an invertible A(X)")
    space = build_arc_space(X)
    walk = grover_walk(space)
    fam = distance_digraphs_bfs(space)
    gen = build_generator(dec, space, X.degree, branch=branch, U=walk.U)

    skews = tuple(fam.skews[1 : fam.diameter + 1])
    exp = expand_in_basis(gen.K, skews)
    if exp.residual >= SPAN_TOL:
        raise TheoremViolation(f"generator is not in the span of the distance skews (residual {exp.residual:.3e})")
    t = tuple(float(c) for c in exp.coefficients)
    factors = tuple(expm_skew(Si, ti) for Si, ti in zip(skews, t))
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            if np.linalg.norm(factors[a] @ factors[b] - factors[b] @ factors[a]) >= COMMUTE_TOL:
                raise TheoremViolation(f"factors {a + 1} and {b + 1} do not commute")
    product = np.eye(space.size)
    for F in factors:
        product = product @ F
    product_error = float(np.linalg.norm(walk.U @ walk.U - product))
    return FactorizationResult(
        t=t,
        residual=exp.residual,
        rank=exp.rank,
        per_factor=factors,
        product_error=product_error,
        skews=skews,
        walk=walk,
        generator=gen,
        family=fam,
        spectrum=dec,
    )


def factorize(X: Graph, tol: float = PRODUCT_TOL, branch: Branch = "principal") -> FactorizationResult:
    res = compute_factorization(X, branch=branch)
    if not res.product_error < tol:
        raise TheoremViolation(f"product of factors differs from U^2 by {res.product_error:.3e} (tol {tol:g})")
    return res


def verify_strongly_regular_claim(X: Graph, res: FactorizationResult) -> bool:
    if X.diameter != 2:
        raise ValidationError(f"expected a diameter-2 graph, got diameter {X.diameter}")
    return len(res.t) <= 2 and res.product_error < PRODUCT_TOL
