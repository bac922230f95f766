"""Dense matrix kernel: Jacobi eigensolver, skew exponential, basis expansion.

Everything here works on small dense numpy arrays (a few hundred rows at
most) and is deterministic: the same input gives bit-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InternalConsistencyError, ValidationError

SYMMETRY_TOL = 1e-12
SKEW_TOL = 1e-12
JACOBI_TOL = 1e-13
CLUSTER_TOL = 1e-8
DECOMPOSITION_TOL = 1e-9
GRAM_PIVOT_TOL = 1e-10
MAX_SWEEPS = 100

TAYLOR_TERMS = 18
TAYLOR_SCALE_TARGET = 0.5


def _as_square(M, what: str) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValidationError(f"{what} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValidationError(f"{what} has non-finite entries")
    return M


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class EigenPair:
    """One clustered eigenvalue with its orthogonal projector."""

    value: float
    multiplicity: int
    projector: np.ndarray


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    source: np.ndarray
    pairs: tuple[EigenPair, ...]
    cluster_tol: float

    @property
    def values(self) -> list[float]:
        return [p.value for p in self.pairs]

    def pair_for(self, value: float, tol: float = 1e-6) -> EigenPair:
        for p in self.pairs:
            if abs(p.value - value) <= tol:
                return p
        raise KeyError(f"no eigenvalue within {tol} of {value}")


def jacobi_eigh(M) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a real symmetric matrix.

    Returns ``(values, vectors)`` with ``vectors[:, i]`` the unit eigenvector
    for ``values[i]``; values are sorted ascending.
    """
    A = np.array(_as_square(M, "matrix"), dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    target = JACOBI_TOL * scale
    for _ in range(MAX_SWEEPS):
        off = float(np.linalg.norm(A - np.diag(np.diag(A))))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- J^T A J with J the (p, q) Givens rotation
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    else:
        raise InternalConsistencyError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
    values = np.diag(A).copy()
    order = np.argsort(values, kind="stable")
    return values[order], V[:, order]


def symmetric_eig(M, cluster_tol: float = CLUSTER_TOL) -> SpectralDecomposition:
    """Spectral decomposition of a symmetric matrix into clustered eigenprojections.

    Raw eigenvalues closer than ``cluster_tol * max(1, ||M||_inf)`` are chained
    into one cluster. Pairs are listed by decreasing eigenvalue.
    """
    M = _as_square(M, "matrix")
    Mf = np.asarray(M, dtype=float)
    if np.max(np.abs(Mf - Mf.T)) > SYMMETRY_TOL:
        raise ValidationError("matrix is not symmetric")
    values, vectors = jacobi_eigh(Mf)
    gap = cluster_tol * max(1.0, float(np.max(np.sum(np.abs(Mf), axis=1))))

    clusters: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    pairs = []
    for idx in reversed(clusters):
        block = vectors[:, idx]
        pairs.append(
            EigenPair(
                value=float(np.mean(values[idx])),
                multiplicity=len(idx),
                projector=_frozen(block @ block.T),
            )
        )
    dec = SpectralDecomposition(source=_frozen(Mf), pairs=tuple(pairs), cluster_tol=cluster_tol)
    _check_decomposition(dec)
    return dec


def _check_decomposition(dec: SpectralDecomposition) -> None:
    M = dec.source
    n = M.shape[0]
    total = sum(p.projector for p in dec.pairs)
    if np.linalg.norm(total - np.eye(n)) >= DECOMPOSITION_TOL:
        raise InternalConsistencyError("eigenprojections do not sum to the identity")
    recon = sum(p.value * p.projector for p in dec.pairs)
    if np.linalg.norm(recon - M) >= DECOMPOSITION_TOL * (1.0 + np.linalg.norm(M)):
        raise InternalConsistencyError("eigenprojections do not reconstruct the matrix")
    for a in range(len(dec.pairs)):
        for b in range(a + 1, len(dec.pairs)):
            if np.linalg.norm(dec.pairs[a].projector @ dec.pairs[b].projector) >= DECOMPOSITION_TOL:
                raise InternalConsistencyError("eigenprojections are not mutually orthogonal")


def expm_skew(S, t: float = 1.0) -> np.ndarray:
    """Return ``exp(t*S)`` for a real skew-symmetric ``S``.

    Scaling and squaring around a truncated Taylor series; the result is
    orthogonal to rounding error.
    """
    S = _as_square(S, "skew matrix")
    Sf = np.asarray(S, dtype=float)
    if np.max(np.abs(Sf + Sf.T)) > SKEW_TOL:
        raise ValidationError("matrix is not skew-symmetric")
    n = Sf.shape[0]
    A = float(t) * Sf
    norm1 = float(np.max(np.sum(np.abs(A), axis=0)))
    squarings = 0
    if norm1 > TAYLOR_SCALE_TARGET:
        squarings = int(math.ceil(math.log2(norm1 / TAYLOR_SCALE_TARGET)))
    A = A / (2.0**squarings)

    eye = np.eye(n)
    E = eye.copy()
    for j in range(TAYLOR_TERMS, 0, -1):
        E = eye + (A @ E) / j
    for _ in range(squarings):
        E = E @ E
    return E


def trace_inner(X, Y) -> float:
    """Trace inner product <X, Y> = trace(X^T Y)."""
    return float(np.sum(np.asarray(X, dtype=float) * np.asarray(Y, dtype=float)))


class Expansion(NamedTuple):
    coefficients: np.ndarray
    residual: float
    rank: int


def _min_norm_solve(G: np.ndarray, b: np.ndarray, rel_tol: float) -> tuple[np.ndarray, int]:
    """Minimum-norm solution of a consistent symmetric system by complete pivoting."""
    n = G.shape[0]
    A = G.astype(float).copy()
    rhs = b.astype(float).copy()
    perm = np.arange(n)
    biggest = float(np.max(np.abs(A))) if n else 0.0
    if biggest == 0.0:
        return np.zeros(n), 0

    rank = 0
    for r in range(n):
        sub = np.abs(A[r:, r:])
        i, j = np.unravel_index(int(np.argmax(sub)), sub.shape)
        if sub[i, j] <= rel_tol * biggest:
            break
        i += r
        j += r
        A[[r, i], :] = A[[i, r], :]
        rhs[[r, i]] = rhs[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        perm[[r, j]] = perm[[j, r]]
        factors = A[r + 1 :, r] / A[r, r]
        A[r + 1 :, :] -= np.outer(factors, A[r, :])
        rhs[r + 1 :] -= factors * rhs[r]
        rank += 1

    U11 = A[:rank, :rank]
    U12 = A[:rank, rank:]

    # basic solution: free variables set to zero
    y = np.zeros(n)
    y[:rank] = np.linalg.solve(U11, rhs[:rank]) if rank else y[:rank]
    null = np.zeros((n, n - rank))
    if n - rank:
        null[:rank, :] = -np.linalg.solve(U11, U12) if rank else 0.0
        null[rank:, :] = np.eye(n - rank)
        Q, _ = np.linalg.qr(null)
        y = y - Q @ (Q.T @ y)

    x = np.zeros(n)
    x[perm] = y
    return x, rank


def expand_in_basis(K, basis: Sequence, pivot_tol: float = GRAM_PIVOT_TOL) -> Expansion:
    """Least-squares coefficients of ``K`` in ``basis`` under the trace inner product.

    The Gram system is solved with a rank-revealing elimination, so linearly
    dependent bases are fine: the minimum-norm coefficient vector is returned
    together with the Gram rank and ``||K - sum c_i B_i||_F``.
    """
    if len(basis) == 0:
        raise ValidationError("basis must be non-empty")
    K = np.asarray(K, dtype=float)
    mats = [np.asarray(B, dtype=float) for B in basis]
    for B in mats:
        if B.shape != K.shape:
            raise ValidationError(f"basis matrix shape {B.shape} does not match {K.shape}")
    G = np.array([[trace_inner(Bi, Bj) for Bj in mats] for Bi in mats])
    rhs = np.array([trace_inner(Bi, K) for Bi in mats])
    coeffs, rank = _min_norm_solve(G, rhs, pivot_tol)
    approx = sum(c * B for c, B in zip(coeffs, mats))
    residual = float(np.linalg.norm(K - approx))
    return Expansion(coefficients=coeffs, residual=residual, rank=rank)
