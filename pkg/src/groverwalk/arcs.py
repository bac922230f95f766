"""Arcs of a graph, its line digraph, and the distance digraphs of the line digraph.

All matrices in this module are int64 and every identity is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import HypothesisError, InternalConsistencyError
from .graphs import DistanceMatrixSet, Graph, bfs_distances, check_distance_regular

Arc = tuple[int, int]


def _ro(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ArcSpace:
    """Both orientations of every edge, sorted by (tail, head).

    ``Dt``/``Dh`` are the vertex-by-arc tail and head incidence matrices and
    ``R`` is the arc-reversal permutation.
    """

    graph: Graph
    arcs: tuple[Arc, ...]
    arc_index: dict[Arc, int]
    Dt: np.ndarray
    Dh: np.ndarray
    R: np.ndarray

    @property
    def size(self) -> int:
        return len(self.arcs)

    def index(self, arc: Arc) -> int:
        try:
            return self.arc_index[tuple(arc)]
        except KeyError:
            raise KeyError(f"{arc} is not an arc of the graph") from None


def build_arc_space(X: Graph) -> ArcSpace:
    A = X.adjacency
    arcs = tuple((int(a), int(b)) for a, b in zip(*np.nonzero(A)))  # row-major = sorted
    index = {arc: i for i, arc in enumerate(arcs)}
    n, m2 = X.n, len(arcs)
    Dt = np.zeros((n, m2), dtype=np.int64)
    Dh = np.zeros((n, m2), dtype=np.int64)
    R = np.zeros((m2, m2), dtype=np.int64)
    for j, (a, b) in enumerate(arcs):
        Dt[a, j] = 1
        Dh[b, j] = 1
        R[index[(b, a)], j] = 1
    space = ArcSpace(X, arcs, index, _ro(Dt), _ro(Dh), _ro(R))
    report = verify_incidence_identities(space)
    if not all(report):
        raise InternalConsistencyError(f"incidence identities failed: {report}")
    return space


class IncidenceReport(NamedTuple):
    tail_reversal_is_head: bool
    incidence_grams_are_kI: bool
    cross_gram_is_adjacency: bool
    head_tail_is_line_digraph: bool


def verify_incidence_identities(S: ArcSpace) -> IncidenceReport:
    """Exact integer checks of the four tail/head incidence identities."""
    Dt, Dh, R = S.Dt, S.Dh, S.R
    X = S.graph
    kI = X.degree * np.eye(X.n, dtype=np.int64)
    return IncidenceReport(
        tail_reversal_is_head=bool(np.array_equal(Dt @ R, Dh)),
        incidence_grams_are_kI=bool(np.array_equal(Dt @ Dt.T, kI) and np.array_equal(Dh @ Dh.T, kI)),
        cross_gram_is_adjacency=bool(
            np.array_equal(Dt @ Dh.T, X.adjacency) and np.array_equal(Dh @ Dt.T, X.adjacency)
        ),
        head_tail_is_line_digraph=bool(np.array_equal(Dh.T @ Dt, line_digraph_adjacency(S))),
    )


def line_digraph_adjacency(S: ArcSpace) -> np.ndarray:
    """(a, b) -> (c, d) iff b == c, evaluated arc by arc."""
    tails = np.array([a for a, _ in S.arcs])
    heads = np.array([b for _, b in S.arcs])
    return _ro((heads[:, None] == tails[None, :]).astype(np.int64))


def ld_distance_formula(S: ArcSpace, dist_X: np.ndarray, arc1: Arc, arc2: Arc) -> int:
    """Distance between two arcs in the line digraph, read off graph distances."""
    a, b = S.arcs[S.index(arc1)]
    c, d = S.arcs[S.index(arc2)]
    if (a, b) == (c, d):
        return int(dist_X[b, c]) - 1
    return int(dist_X[b, c]) + 1


def ld_distances(S: ArcSpace) -> np.ndarray:
    """BFS distances in the line digraph (-1 if unreachable)."""
    return bfs_distances(line_digraph_adjacency(S))


@dataclass(frozen=True, eq=False)
class DistanceDigraphFamily:
    """``A(Y_0)..A(Y_{d+1})`` and their skew parts ``S(Y_i) = A(Y_i) - A(Y_i)^T``."""

    matrices: tuple[np.ndarray, ...]
    skews: tuple[np.ndarray, ...]

    @property
    def diameter(self) -> int:
        """Diameter of the underlying graph (one less than the top index)."""
        return len(self.matrices) - 2

    def distances(self) -> np.ndarray:
        return sum(i * M for i, M in enumerate(self.matrices))


def _family(matrices: list[np.ndarray]) -> DistanceDigraphFamily:
    size = matrices[0].shape[0]
    if not np.array_equal(matrices[0], np.eye(size, dtype=np.int64)):
        raise InternalConsistencyError("A(Y_0) is not the identity")
    if not np.array_equal(sum(matrices), np.ones((size, size), dtype=np.int64)):
        raise InternalConsistencyError("distance digraphs do not partition the arc pairs")
    skews = [_ro(M - M.T) for M in matrices]
    return DistanceDigraphFamily(tuple(_ro(M) for M in matrices), tuple(skews))


def distance_digraphs_bfs(S: ArcSpace) -> DistanceDigraphFamily:
    dist = ld_distances(S)
    d = S.graph.diameter
    if np.any(dist < 0):
        raise InternalConsistencyError("line digraph is not strongly connected")
    if dist.max() > d + 1:
        raise InternalConsistencyError(f"line digraph distance {dist.max()} exceeds {d + 1}")
    return _family([(dist == i).astype(np.int64) for i in range(d + 2)])


def distance_digraphs_formula(dm: DistanceMatrixSet, S: ArcSpace) -> DistanceDigraphFamily:
    """Distance digraphs of the line digraph from the distance matrices of a DRG.

    ``A(Y_i) = Dh^T A_{i-1} Dt`` for every ``i >= 1``, minus ``I`` at ``i = 2``.
    """
    if not check_distance_regular(S.graph).is_drg:
        raise HypothesisError("graph is not distance-regular")
    Dt, Dh = S.Dt, S.Dh
    eye = np.eye(S.size, dtype=np.int64)
    mats = [eye.copy()]
    for i in range(1, dm.diameter + 2):
        M = Dh.T @ dm.matrices[i - 1] @ Dt
        if i == 2:
            M = M - eye
        mats.append(M)
    return _family(mats)


@dataclass(frozen=True, eq=False)
class DigraphIntersectionNumbers:
    """``m[i, j, l]``: arcs w with dist(u, w) = i and dist(w, v) = j, for dist(u, v) = l."""

    m: np.ndarray


def digraph_intersection_numbers(S: ArcSpace, fam: DistanceDigraphFamily) -> DigraphIntersectionNumbers:
    dist = fam.distances()
    size = len(fam.matrices)
    m = np.zeros((size, size, size), dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    for u in range(S.size):
        for v in range(S.size):
            ell = int(dist[u, v])
            codes = dist[u] * size + dist[:, v]
            counts = np.bincount(codes, minlength=size * size).reshape(size, size)
            if not seen[ell]:
                m[:, :, ell] = counts
                seen[ell] = True
            elif not np.array_equal(counts, m[:, :, ell]):
                raise InternalConsistencyError(
                    f"line digraph is not distance-regular: arcs {S.arcs[u]}, {S.arcs[v]} at distance {ell}"
                )
    if not np.array_equal(m, m.transpose(1, 0, 2)):
        raise InternalConsistencyError("digraph intersection numbers are not symmetric in (i, j)")
    return DigraphIntersectionNumbers(_ro(m))


def check_skew_commuting(fam: DistanceDigraphFamily) -> bool:
    """Exact check that all skew-adjacency matrices commute pairwise."""
    S = fam.skews
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            if not np.array_equal(S[i] @ S[j], S[j] @ S[i]):
                return False
    return True
