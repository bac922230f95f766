"""Regular graphs, named families, distances and distance-regularity."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError

FAMILIES = ("complete", "cycle", "hypercube", "petersen", "complete_bipartite", "prism")


def bfs_distances(adjacency: np.ndarray) -> np.ndarray:
    """All-pairs hop counts of a (di)graph by BFS from every vertex; -1 marks unreachable."""
    n = adjacency.shape[0]
    out = [np.flatnonzero(adjacency[u]) for u in range(n)]
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in out[u]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
    return dist


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple connected regular graph on vertices ``0..n-1``.

    ``adjacency`` is validated on construction and stored read-only.
    """

    adjacency: np.ndarray
    family: str | None = None

    def __post_init__(self) -> None:
        A = np.asarray(self.adjacency)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
            raise ValidationError(f"adjacency must be a non-empty square matrix, got shape {A.shape}")
        if not np.all((A == 0) | (A == 1)):
            raise ValidationError("adjacency entries must be 0 or 1")
        A = A.astype(np.int64)
        if np.any(np.diag(A)):
            raise ValidationError("graph has a self-loop")
        if not np.array_equal(A, A.T):
            raise ValidationError("adjacency is not symmetric")
        degrees = A.sum(axis=1)
        if np.any(degrees != degrees[0]):
            raise ValidationError(f"graph is not regular: degrees range {degrees.min()}..{degrees.max()}")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)
        # connectivity is part of the type
        _ = self.distances

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degree(self) -> int:
        return int(self.adjacency[0].sum())

    @property
    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency))
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    @cached_property
    def distances(self) -> np.ndarray:
        return graph_distances(self)

    @property
    def diameter(self) -> int:
        return int(self.distances.max())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], family: str | None = None) -> Graph:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
        A = np.zeros((n, n), dtype=np.int64)
        for e in edges:
            if len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
                raise ValidationError(f"edge must be a pair of integers, got {e!r}")
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge {[u, v]} has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if A[u, v]:
                raise ValidationError(f"duplicate edge {[u, v]}")
            A[u, v] = A[v, u] = 1
        return cls(A, family=family)

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> Graph:
        if not isinstance(data, Mapping) or "n" not in data or "edges" not in data:
            raise ValidationError('graph JSON must be an object with "n" and "edges"')
        edges = data["edges"]
        if not isinstance(edges, list):
            raise ValidationError('"edges" must be an array')
        family = data.get("family")
        return cls.from_edges(data["n"], edges, family=family if isinstance(family, str) else None)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.family is not None:
            out["family"] = self.family
        return out


def _param(params: Sequence[int], count: int, name: str, default: Sequence[int] = ()) -> list[int]:
    params = list(params) if params else list(default)
    if len(params) != count:
        raise ValidationError(f"family {name!r} takes {count} parameter(s), got {len(params)}")
    return params


def build_family(name: str, params: Sequence[int] = ()) -> Graph:
    """Construct a named graph.

    Vertex orderings:

    * ``complete [n]``, ``cycle [n]``: ``0..n-1``, cycle edges ``i ~ i+1``.
    * ``hypercube [d]``: vertex ``i`` is the binary string of ``i`` (MSB first),
      so lexicographic order of strings equals index order.
    * ``petersen``: outer pentagon ``0..4``, inner pentagram ``5..9`` with
      ``5+i ~ 5+(i+2)%5``, spokes ``i ~ i+5``.
    * ``complete_bipartite [a, b]``: parts ``0..a-1`` and ``a..a+b-1``; only
      ``a == b`` is regular.
    * ``prism [n]`` (default 3): ``C_n x K_2``, outer cycle ``0..n-1``,
      inner cycle ``n..2n-1``, spokes ``i ~ i+n``.
    """
    if name not in FAMILIES:
        raise ValidationError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    edges: list[tuple[int, int]]
    if name == "complete":
        (n,) = _param(params, 1, name)
        if n < 2:
            raise ValidationError("complete graph needs n >= 2")
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        label = f"K_{n}"
    elif name == "cycle":
        (n,) = _param(params, 1, name)
        if n < 3:
            raise ValidationError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
        label = f"C_{n}"
    elif name == "hypercube":
        (d,) = _param(params, 1, name)
        if d < 1:
            raise ValidationError("hypercube needs dimension >= 1")
        n = 2**d
        edges = [(u, u ^ (1 << b)) for u in range(n) for b in range(d) if u < u ^ (1 << b)]
        label = f"Q_{d}"
    elif name == "petersen":
        _param(params, 0, name)
        n = 10
        edges = []
        for i in range(5):
            edges += [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, i + 5)]
        label = "Petersen"
    elif name == "complete_bipartite":
        a, b = _param(params, 2, name)
        if a < 1 or b < 1:
            raise ValidationError("complete bipartite graph needs both parts non-empty")
        if a != b:
            raise ValidationError(f"K_{{{a},{b}}} is not regular")
        n = a + b
        edges = [(u, v) for u in range(a) for v in range(a, n)]
        label = f"K_{a},{b}"
    else:
        (n,) = _param(params, 1, name, default=(3,))
        if n < 3:
            raise ValidationError("prism needs n >= 3")
        edges = []
        for i in range(n):
            edges += [(i, (i + 1) % n), (n + i, n + (i + 1) % n), (i, n + i)]
        n = 2 * n
        label = f"prism_{n // 2}"
    return Graph.from_edges(n, edges, family=label)


def graph_distances(X: Graph) -> np.ndarray:
    """Hop-count matrix of a connected graph."""
    dist = bfs_distances(X.adjacency)
    if np.any(dist < 0):
        u, v = (int(x) for x in np.argwhere(dist < 0)[0])
        raise ValidationError(f"graph is disconnected: no path from vertex {u} to vertex {v}")
    return dist


@dataclass(frozen=True, eq=False)
class DistanceMatrixSet:
    diameter: int
    matrices: tuple[np.ndarray, ...]


def distance_matrices(X: Graph) -> DistanceMatrixSet:
    dist = X.distances
    d = int(dist.max())
    mats = []
    for i in range(d + 1):
        M = (dist == i).astype(np.int64)
        M.setflags(write=False)
        mats.append(M)
    return DistanceMatrixSet(diameter=d, matrices=tuple(mats))


@dataclass(frozen=True, eq=False)
class IntersectionNumbers:
    """``p[i, j, l]``: vertices at distance i from u and j from v, for d(u, v) = l."""

    p: np.ndarray

    @property
    def diameter(self) -> int:
        return self.p.shape[0] - 1

    def intersection_array(self) -> tuple[list[int], list[int]]:
        """``({b_0..b_{d-1}}, {c_1..c_d})``."""
        d = self.diameter
        b = [int(self.p[i + 1, 1, i]) for i in range(d)]
        c = [int(self.p[i - 1, 1, i]) for i in range(1, d + 1)]
        return b, c


@dataclass(frozen=True)
class RegularityWitness:
    """Two vertex pairs at the same distance with different (i, j) counts."""

    reference_pair: tuple[int, int]
    pair: tuple[int, int]
    distance: int
    i: int
    j: int
    reference_count: int
    count: int


@dataclass(frozen=True, eq=False)
class DrgVerdict:
    is_drg: bool
    numbers: IntersectionNumbers | None = None
    witness: RegularityWitness | None = field(default=None)

    def __post_init__(self) -> None:
        if (self.numbers is None) == (self.witness is None):
            raise ValueError("exactly one of numbers/witness must be set")


def _pair_counts(dist: np.ndarray, u: int, v: int, size: int) -> np.ndarray:
    codes = dist[u] * size + dist[:, v]
    return np.bincount(codes, minlength=size * size).reshape(size, size)


def check_distance_regular(X: Graph) -> DrgVerdict:
    """Decide distance-regularity by counting, for every ordered pair, the
    vertices at each pair of distances."""
    dist = X.distances
    size = int(dist.max()) + 1
    p = np.zeros((size, size, size), dtype=np.int64)
    reference: dict[int, tuple[int, int]] = {}
    for u in range(X.n):
        for v in range(X.n):
            ell = int(dist[u, v])
            counts = _pair_counts(dist, u, v, size)
            if ell not in reference:
                reference[ell] = (u, v)
                p[:, :, ell] = counts
                continue
            diff = np.argwhere(counts != p[:, :, ell])
            if len(diff):
                i, j = (int(x) for x in diff[0])
                return DrgVerdict(
                    is_drg=False,
                    witness=RegularityWitness(
                        reference_pair=reference[ell],
                        pair=(u, v),
                        distance=ell,
                        i=i,
                        j=j,
                        reference_count=int(p[i, j, ell]),
                        count=int(counts[i, j]),
                    ),
                )
    p.setflags(write=False)
    return DrgVerdict(is_drg=True, numbers=IntersectionNumbers(p))


def verify_scheme_product(dm: DistanceMatrixSet, numbers: IntersectionNumbers) -> bool:
    """Exact check that ``A_i A_j = sum_l p[i, j, l] A_l`` for all i, j."""
    A = dm.matrices
    if numbers.diameter != dm.diameter:
        return False
    for i in range(len(A)):
        for j in range(len(A)):
            rhs = sum(int(numbers.p[i, j, ell]) * A[ell] for ell in range(len(A)))
            if not np.array_equal(A[i] @ A[j], rhs):
                return False
    return True
