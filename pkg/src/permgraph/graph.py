"""The graph of overlapping permutations as a directed multigraph.

Vertices are permutations of length n, identified by their lexicographic
rank. Each permutation ``e`` of length n+1 is one edge, identified by its own
rank, running from ``st(e[:n])`` to ``st(e[1:])``.
"""

from __future__ import annotations

from functools import cached_property
from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

import numpy as np

from .errors import GraphSizeError
from .perm import Perm, check_perm, rank, standardize, unrank

EAGER_MAX_N = 9
IMPLICIT_MAX_N = 16


def edge_endpoints(e: Sequence[int]) -> tuple[Perm, Perm]:
    e = check_perm(e)
    if len(e) < 3:
        raise ValueError(f"edges have length n+1 >= 3, got {e!r}")
    return standardize(e[:-1]), standardize(e[1:])


def insert_last(a: Sequence[int], x: int) -> Perm:
    """The edge leaving ``a`` whose final entry has value ``x`` (1..n+1)."""
    return tuple(v + (v >= x) for v in a) + (x,)


def insert_first(b: Sequence[int], x: int) -> Perm:
    """The edge entering ``b`` whose first entry has value ``x`` (1..n+1)."""
    return (x,) + tuple(v + (v >= x) for v in b)


def out_edge_perms(a: Sequence[int]) -> list[Perm]:
    """All n+1 edges leaving ``a``, sorted by edge rank."""
    return sorted((insert_last(a, x) for x in range(1, len(a) + 2)), key=rank)


def edges_connecting(a: Sequence[int], b: Sequence[int]) -> list[Perm]:
    """Edges from ``a`` to ``b`` computed from the permutations alone."""
    b = tuple(b)
    return [e for e in out_edge_perms(a) if standardize(e[1:]) == b]


def double_edge_pair(a: Sequence[int]) -> tuple[Perm, Perm]:
    """The two parallel edges from ``a`` to its cyclic shift."""
    a = check_perm(a)
    a1 = a[0]
    mid = tuple(v + 1 if v > a1 else v for v in a[1:])
    return (a1,) + mid + (a1 + 1,), (a1 + 1,) + mid + (a1,)


def _rank_rows(P: np.ndarray) -> np.ndarray:
    """Vectorized lexicographic rank of each row of ``P``."""
    rows, L = P.shape
    r = np.zeros(rows, dtype=np.int64)
    for i in range(L):
        smaller = (P[:, i + 1:] < P[:, i:i + 1]).sum(axis=1)
        r = r * (L - i) + smaller
    return r


def _perm_table(L: int) -> np.ndarray:
    return np.array(list(permutations(range(1, L + 1))), dtype=np.int8).reshape(-1, L)


class OverlapGraph:
    """Materialized G(n): an (n!, n+1) table of out-edges per vertex rank.

    Row ``a`` of ``edge_ids``/``heads`` lists the out-edges of vertex ``a`` in
    increasing edge rank. Instances are read-only after construction.
    """

    implicit = False

    def __init__(self, n: int):
        if not 2 <= n <= EAGER_MAX_N:
            raise GraphSizeError(
                f"eager G({n}) needs {factorial(n + 1):,} edge rows; "
                f"supported range is 2..{EAGER_MAX_N}, use implicit mode beyond")
        self.n = n
        E = _perm_table(n + 1)
        edge_rank = np.arange(len(E), dtype=np.int64)
        last = E[:, n:n + 1]
        first = E[:, 0:1]
        tails = _rank_rows(E[:, :n] - (E[:, :n] > last))
        heads = _rank_rows(E[:, 1:] - (E[:, 1:] > first))
        # stable sort by tail keeps increasing edge rank within each row
        order = np.argsort(tails, kind="stable")
        self.edge_ids = edge_rank[order].reshape(-1, n + 1)
        self.heads = heads[order].reshape(-1, n + 1)
        self.edge_tail = tails
        self.edge_head = heads

    @property
    def vertex_count(self) -> int:
        return factorial(self.n)

    @property
    def edge_count(self) -> int:
        return factorial(self.n + 1)

    def vertex(self, r: int) -> Perm:
        return unrank(self.n, r)

    def rank(self, p: Sequence[int]) -> int:
        if len(p) != self.n:
            raise ValueError(f"expected a permutation of length {self.n}, got {tuple(p)!r}")
        return rank(check_perm(p))

    def edge(self, eid: int) -> Perm:
        return unrank(self.n + 1, eid)

    def out_edges(self, v: int) -> list[tuple[int, int]]:
        """(edge rank, head rank) pairs leaving vertex rank ``v``."""
        return self.successors[v]

    @cached_property
    def successors(self) -> list[list[tuple[int, int]]]:
        return [list(zip(ids, hs)) for ids, hs in zip(self.edge_ids.tolist(), self.heads.tolist())]

    @cached_property
    def predecessors(self) -> list[list[tuple[int, int]]]:
        pred: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, (t, h) in enumerate(zip(self.edge_tail.tolist(), self.edge_head.tolist())):
            pred[h].append((eid, t))
        return pred

    def in_edges(self, v: int) -> list[tuple[int, int]]:
        """(edge rank, tail rank) pairs entering vertex rank ``v``."""
        return self.predecessors[v]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """(edge rank, tail rank, head rank) in edge-rank order."""
        return zip(range(self.edge_count), self.edge_tail.tolist(), self.edge_head.tolist())

    def edges_between(self, a: Sequence[int], b: Sequence[int]) -> list[Perm]:
        ra, rb = self.rank(a), self.rank(b)
        return [self.edge(e) for e, h in self.out_edges(ra) if h == rb]

    def out_degree(self, v: int) -> int:
        return len(self.out_edges(v))

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.edge_head, minlength=self.vertex_count)

    def adjacency_matrix(self):
        """Sparse n! x n! matrix of edge multiplicities."""
        from scipy.sparse import csr_matrix

        N = self.vertex_count
        data = np.ones(self.edge_count, dtype=np.int64)
        A = csr_matrix((data, (self.edge_tail, self.edge_head)), shape=(N, N))
        A.sum_duplicates()
        return A


class ImplicitOverlapGraph:
    """G(n) without a stored edge table; out-edges are derived per query."""

    implicit = True

    def __init__(self, n: int):
        if not 2 <= n <= IMPLICIT_MAX_N:
            raise GraphSizeError(f"implicit mode supports 2 <= n <= {IMPLICIT_MAX_N}, got {n}")
        self.n = n

    @property
    def vertex_count(self) -> int:
        return factorial(self.n)

    @property
    def edge_count(self) -> int:
        return factorial(self.n + 1)

    def vertex(self, r: int) -> Perm:
        return unrank(self.n, r)

    def rank(self, p: Sequence[int]) -> int:
        if len(p) != self.n:
            raise ValueError(f"expected a permutation of length {self.n}, got {tuple(p)!r}")
        return rank(check_perm(p))

    def edge(self, eid: int) -> Perm:
        return unrank(self.n + 1, eid)

    def out_edges(self, v: int) -> list[tuple[int, int]]:
        return [(rank(e), rank(standardize(e[1:]))) for e in out_edge_perms(self.vertex(v))]

    def in_edges(self, v: int) -> list[tuple[int, int]]:
        b = self.vertex(v)
        es = sorted((insert_first(b, x) for x in range(1, self.n + 2)), key=rank)
        return [(rank(e), rank(standardize(e[:-1]))) for e in es]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for eid in range(self.edge_count):
            t, h = edge_endpoints(self.edge(eid))
            yield eid, rank(t), rank(h)

    def edges_between(self, a: Sequence[int], b: Sequence[int]) -> list[Perm]:
        self.rank(a)
        return edges_connecting(a, b)

    def out_degree(self, v: int) -> int:
        return self.n + 1


def build(n: int, implicit: bool | None = None) -> OverlapGraph | ImplicitOverlapGraph:
    """Construct G(n); eager up to n=8 unless told otherwise."""
    if implicit is None:
        implicit = n > 8
    return ImplicitOverlapGraph(n) if implicit else OverlapGraph(n)


def walk_count_matrix(g: OverlapGraph, t: int):
    """Sparse matrix whose (a, b) entry counts t-walks from a to b."""
    A = g.adjacency_matrix()
    M = A
    for _ in range(t - 1):
        M = M @ A
    return M


def closed_walk_diagonal(g: OverlapGraph, k: int) -> np.ndarray:
    """Rooted closed k-walk counts per vertex, edges counted with multiplicity.

    Uses diag(A^k) = rowsum(A^p * (A^q)^T) with p + q = k, so only the half
    powers are ever formed.
    """
    if k < 1:
        raise ValueError("walk length must be >= 1")
    A = g.adjacency_matrix()
    if k == 1:
        return np.asarray(A.diagonal(), dtype=np.int64)
    p = k // 2
    P = walk_count_matrix(g, p)
    Q = P if k - p == p else P @ A
    return np.asarray(P.multiply(Q.T).sum(axis=1), dtype=np.int64).ravel()
