"""Closed walks in G(n): existence, construction, branching, obstructions.

Positions and indices reported by this module (``i``, ``j``, ``ells``) are
1-based, matching how permutations are usually written down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConditionNotMet, ConstructionError, DomainError
from .graph import edge_endpoints, edges_connecting, walk_count_matrix
from .perm import Perm, check_perm, format_perm, rank, standardize, unrank


def _check_k(a: Sequence[int], k: int) -> int:
    n = len(a)
    if not 2 <= k <= n - 1:
        raise DomainError(f"walk length k={k} outside 2..{n - 1} for n={n}")
    return n


@dataclass(frozen=True)
class OverlapProfile:
    source: Perm
    k: int
    y: Perm  # st(a_2..a_n)
    z: Perm  # st(a_1..a_{n-k+1})


def overlap_profile(a: Sequence[int], k: int) -> OverlapProfile:
    a = check_perm(a)
    n = _check_k(a, k)
    return OverlapProfile(a, k, standardize(a[1:]), standardize(a[:n - k + 1]))


def closed_walk_condition(a: Sequence[int], k: int) -> bool:
    """True iff the first and last n-k entries of ``a`` have the same pattern.

    This is exactly the condition for ``a`` to lie on some closed k-walk.
    """
    n = _check_k(a, k)
    return standardize(a[:n - k]) == standardize(a[k:])


def loop_condition(a: Sequence[int]) -> bool:
    """The k=1 analogue: first and last n-1 entries share a pattern."""
    return standardize(a[:-1]) == standardize(a[1:])


def walk_condition(a: Sequence[int], b: Sequence[int], t: int) -> bool:
    """True iff the last n-t entries of ``a`` match the first n-t of ``b``."""
    n = len(a)
    if len(b) != n:
        raise DomainError("walk endpoints must have equal length")
    if not 1 <= t <= n - 1:
        raise DomainError(f"walk length t={t} outside 1..{n - 1}")
    return standardize(a[t:]) == standardize(b[:n - t])


def extend(y: Sequence[int], target: Sequence[int]) -> Perm:
    """Build ``b`` with st(b_1..b_{n-1}) = y and the last len(target) entries
    of ``b`` standardizing to ``target``.

    If the target's final entry is 1 the new last entry is the minimum and
    every other value moves up by one. Otherwise the new last entry goes
    directly above the entry whose target value is one less.
    """
    y = tuple(y)
    target = tuple(target)
    n = len(y) + 1
    L = len(target)
    if not 1 <= L <= n:
        raise ConstructionError(f"target length {L} incompatible with n={n}")
    offset = n - L
    last = target[-1]
    if last == 1:
        b = tuple(v + 1 for v in y) + (1,)
    else:
        idx = [i for i, v in enumerate(target) if v == last - 1]
        if len(idx) != 1:
            raise ConstructionError(f"target {target!r} is not a permutation pattern")
        pivot = y[offset + idx[0]]
        b = tuple(v if v <= pivot else v + 1 for v in y) + (pivot + 1,)
    if standardize(b[:-1]) != y or standardize(b[offset:]) != target:
        raise ConstructionError(
            f"y={format_perm(y)} and target={format_perm(target)} do not overlap consistently")
    return b


def successor_candidate(a: Sequence[int], k: int, z_override: Sequence[int] | None = None) -> Perm:
    """Second vertex of a closed k-walk from ``a`` with suffix pattern ``z_override``
    (defaults to z_a)."""
    prof = overlap_profile(a, k)
    z = prof.z if z_override is None else tuple(z_override)
    n = len(prof.source)
    if len(z) != n - k + 1:
        raise DomainError(f"suffix pattern must have length {n - k + 1}")
    return extend(prof.y, z)


@dataclass(frozen=True)
class Walk:
    """An open walk: ``edges[i]`` runs from ``vertices[i]`` to ``vertices[i+1]``."""

    vertices: tuple[Perm, ...]
    edges: tuple[Perm, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("a t-walk has t+1 vertices")
        for i, e in enumerate(self.edges):
            if edge_endpoints(e) != (self.vertices[i], self.vertices[i + 1]):
                raise ValueError(f"edge {format_perm(e)} does not join step {i}")


@dataclass(frozen=True)
class ClosedWalk:
    """A closed walk given by vertex and edge ranks; edge i leaves vertex i.

    Equality is on the rooted sequence; compare ``canonical()`` forms (or
    ``key``) to test rotation equivalence.
    """

    n: int
    vertex_ranks: tuple[int, ...]
    edge_ranks: tuple[int, ...]

    @classmethod
    def from_perms(cls, vertices: Sequence[Sequence[int]], edges: Sequence[Sequence[int]]) -> "ClosedWalk":
        n = len(vertices[0])
        return cls(n, tuple(rank(v) for v in vertices), tuple(rank(e) for e in edges))

    @property
    def length(self) -> int:
        return len(self.vertex_ranks)

    @property
    def vertices(self) -> tuple[Perm, ...]:
        return tuple(unrank(self.n, r) for r in self.vertex_ranks)

    @property
    def edges(self) -> tuple[Perm, ...]:
        return tuple(unrank(self.n + 1, r) for r in self.edge_ranks)

    @property
    def is_cycle(self) -> bool:
        return len(set(self.vertex_ranks)) == self.length

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return self.canonical().pairs

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.vertex_ranks, self.edge_ranks))

    def canonical(self) -> "ClosedWalk":
        p = self.pairs
        best = min(p[i:] + p[:i] for i in range(len(p)))
        return ClosedWalk(self.n, tuple(v for v, _ in best), tuple(e for _, e in best))

    def rotated_to(self, vertex_rank: int) -> "ClosedWalk":
        """First rotation starting at ``vertex_rank``."""
        i = self.vertex_ranks.index(vertex_rank)
        vr, er = self.vertex_ranks, self.edge_ranks
        return ClosedWalk(self.n, vr[i:] + vr[:i], er[i:] + er[:i])

    def validate(self) -> None:
        k = self.length
        vs, es = self.vertices, self.edges
        for i in range(k):
            if edge_endpoints(es[i]) != (vs[i], vs[(i + 1) % k]):
                raise ValueError(f"edge {format_perm(es[i])} does not join step {i}")

    def as_walk(self) -> Walk:
        vs = self.vertices
        return Walk(vs + (vs[0],), self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": [format_perm(v) for v in self.vertices],
            "edges": [format_perm(e) for e in self.edges],
            "cycle": self.is_cycle,
        }


def build_walk_between(a: Sequence[int], b: Sequence[int], t: int) -> Walk:
    """Construct a t-walk from ``a`` to ``b`` when their overlap patterns agree.

    Each intermediate vertex is chosen by ``extend`` so that its suffix already
    carries a growing prefix pattern of ``b``; the final edge then exists.
    """
    a, b = check_perm(a), check_perm(b)
    n = len(a)
    if not walk_condition(a, b, t):
        raise ConditionNotMet(
            f"no {t}-walk from {format_perm(a)} to {format_perm(b)}: "
            f"st(last {n - t}) = {format_perm(standardize(a[t:]))} but "
            f"st(first {n - t}) = {format_perm(standardize(b[:n - t]))}")
    verts = [a]
    for s in range(1, t):
        verts.append(extend(standardize(verts[-1][1:]), standardize(b[:n - t + s])))
    verts.append(b)
    edges = []
    for u, v in zip(verts, verts[1:]):
        es = edges_connecting(u, v)
        if not es:
            raise ConstructionError(f"no edge {format_perm(u)} -> {format_perm(v)}")
        edges.append(es[0])
    return Walk(tuple(verts), tuple(edges))


def build_closed_walk(a: Sequence[int], k: int) -> ClosedWalk:
    """A closed k-walk rooted at ``a``; raises ConditionNotMet when none exists."""
    a = check_perm(a)
    n = _check_k(a, k)
    if not closed_walk_condition(a, k):
        raise ConditionNotMet(
            f"{format_perm(a)} is on no closed {k}-walk: "
            f"st(first {n - k}) = {format_perm(standardize(a[:n - k]))} but "
            f"st(last {n - k}) = {format_perm(standardize(a[k:]))}")
    w = build_walk_between(a, a, k)
    return ClosedWalk.from_perms(w.vertices[:-1], w.edges)


def reach_back(g, target: int, steps: int) -> set[int]:
    """Vertex ranks with a walk of exactly ``steps`` edges ending at ``target``."""
    frontier = {target}
    for _ in range(steps):
        frontier = {t for v in frontier for _, t in g.in_edges(v)}
    return frontier


def branch_count(g, a: Sequence[int], k: int) -> int:
    """Number of distinct second vertices over all closed k-walks starting at ``a``.

    Exhaustive: a successor ``b`` counts iff the backward search finds a
    (k-1)-walk from ``b`` back to ``a``.
    """
    _check_k(a, k)
    ra = g.rank(a)
    back = reach_back(g, ra, k - 1)
    return len({h for _, h in g.out_edges(ra) if h in back})


def branch_counts(g, k: int) -> np.ndarray:
    """``branch_count`` for every vertex at once, via sparse walk counts."""
    A = g.adjacency_matrix()
    A = (A > 0).astype(np.int64)
    R = (walk_count_matrix(g, k - 1) > 0).astype(np.int64) if k > 1 else None
    return np.asarray(A.multiply(R.T).sum(axis=1), dtype=np.int64).ravel()


def _small_m(y: Perm, z: Perm, k: int) -> int:
    """Largest m allowed by the extreme-suffix branching pattern (1 if none)."""
    n = len(y) + 1
    L = len(z)
    window = set(y[:k - 1])
    m = 1
    if z[-1] == 1:
        while m <= k - 1 and m in window:
            m += 1
    elif z[-1] == L:
        while m <= k - 1 and n - m in window:
            m += 1
    return m


def branching_condition_small_n(a: Sequence[int], k: int) -> int | None:
    """Branching number guaranteed when k < n < 2k and z_a ends at an extreme.

    Returns the largest m >= 2 for which the values 1..m-1 (or, when z_a ends
    with its maximum, the m-1 largest values of y_a) all sit in the first k-1
    positions of y_a; ``None`` otherwise.
    """
    a = check_perm(a)
    n = _check_k(a, k)
    if not closed_walk_condition(a, k):
        raise ConditionNotMet(f"{format_perm(a)} is on no closed {k}-walk")
    if not k < n < 2 * k:
        return None
    prof = overlap_profile(a, k)
    m = _small_m(prof.y, prof.z, k)
    return m if m >= 2 else None


@dataclass(frozen=True)
class GeneralBranching:
    m: int
    i: int
    j: int
    ells: tuple[int, ...]


def branching_condition_general(a: Sequence[int], k: int) -> GeneralBranching | None:
    """Branching witness when z_a ends strictly inside its range.

    The neighbours z_L - 1 and z_L + 1 of the last suffix value fix positions
    ``i`` and ``j`` of y_a; m = y_j - y_i and the values strictly between
    must occupy positions ``ells`` within the first k-1 entries of y_a.
    """
    a = check_perm(a)
    n = _check_k(a, k)
    if not closed_walk_condition(a, k):
        raise ConditionNotMet(f"{format_perm(a)} is on no closed {k}-walk")
    prof = overlap_profile(a, k)
    y, z = prof.y, prof.z
    zl = z[-1]
    if zl == 1 or zl == len(z):
        return None
    i = z.index(zl - 1) + k
    j = z.index(zl + 1) + k
    yi, yj = y[i - 1], y[j - 1]
    m = yj - yi
    if not 2 <= m <= k:
        return None
    ells = tuple(y.index(yi + s) + 1 for s in range(1, m))
    if any(l > k - 1 for l in ells):
        return None
    return GeneralBranching(m, i, j, ells)


def reverse_conditions(a: Sequence[int], k: int, m: int) -> tuple[bool, bool]:
    """Whether the extreme-suffix pattern and the interior pattern each allow
    exactly branching number ``m`` (no n < 2k restriction)."""
    prof = overlap_profile(a, k)
    small = prof.z[-1] in (1, len(prof.z)) and _small_m(prof.y, prof.z, k) >= m
    gen = branching_condition_general(a, k) if closed_walk_condition(a, k) else None
    return small, gen is not None and gen.m == m


def lemma_conditions(a: Sequence[int], k: int) -> dict[str, list[int]]:
    """For each obstruction tag a-d, the values of t >= 2 where it fires."""
    a = check_perm(a)
    n = _check_k(a, k)
    first_k = set(a[:k])
    found: dict[str, list[int]] = {"a": [], "b": [], "c": [], "d": []}
    t = 2
    while n >= t * k + 1:
        mid = set(a[k:n - (t - 1) * k])
        head = set(a[:min(k, n - t * k)])
        if n - (t - 2) in mid and first_k.isdisjoint(range(n - t + 3, n + 1)):
            found["a"].append(t)
        if t - 1 in mid and first_k.isdisjoint(range(1, t - 1)):
            found["b"].append(t)
        if n - (t - 1) in head and first_k.isdisjoint(range(n - t + 2, n + 1)):
            found["c"].append(t)
        if t in head and first_k.isdisjoint(range(1, t)):
            found["d"].append(t)
        t += 1
    return found


def forbidden_by_lemma(a: Sequence[int], k: int) -> str | None:
    """First obstruction tag that rules ``a`` out of every closed k-walk."""
    for tag, ts in lemma_conditions(a, k).items():
        if ts:
            return tag
    return None
