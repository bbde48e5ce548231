"""Enumeration and counting of cycles, closed-walk classes and covered vertices.

Notation follows the usual census quantities for G(n):

* ``C``  number of k-cycle classes (parallel edges distinguished)
* ``v``  number of vertices on some k-cycle
* ``w``  number of vertices on some closed k-walk
"""

from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import islice, permutations
from math import ceil, factorial
from typing import Sequence

import numpy as np

from .errors import DomainError, GraphSizeError, ResourceLimitExceeded
from .graph import _rank_rows, build, closed_walk_diagonal
from .perm import Perm, complement, cyclic_shift, format_perm
from .walks import ClosedWalk, closed_walk_condition, reach_back

SCHEMA_VERSION = 1


@lru_cache(maxsize=4)
def _graph(n: int, implicit: bool):
    return build(n, implicit=implicit)


@lru_cache(maxsize=4)
def _pattern_keys(n: int) -> tuple[list[list[int]], list[list[int]]]:
    """suf[r][v] = rank of st(v[r:]) and pre[r][v] = rank of st(v[:n-r])."""
    P = np.array(list(permutations(range(1, n + 1))), dtype=np.int8).reshape(-1, n)
    suf: list[list[int]] = [[] for _ in range(n)]
    pre: list[list[int]] = [[] for _ in range(n)]
    for r in range(1, n):
        for part, out in ((P[:, r:], suf), (P[:, :n - r], pre)):
            st = np.argsort(np.argsort(part, axis=1, kind="stable"), axis=1) + 1
            out[r] = _rank_rows(st).tolist()
    return suf, pre


def _check_eager(g) -> None:
    if g.implicit:
        raise GraphSizeError("this count needs a materialized graph (n <= 9)")


# -- simple cycles ----------------------------------------------------------

def _cycle_scan(g, k: int, starts, mode: str, prune: bool, limit: int | None):
    """DFS for k-cycles whose minimum-rank vertex lies in ``starts``.

    mode "list" returns ClosedWalks, "count" an int, "vertices" a set.
    """
    n = g.n
    out_edges = g.out_edges
    suf, pre = _pattern_keys(n) if prune else (None, None)
    found: list = []
    count = 0
    verts: set[int] = set()
    expansions = 0
    vpath: list[int] = []
    epath: list[int] = []
    on_path: set[int] = set()

    def rec(s: int, u: int, depth: int) -> None:
        nonlocal count, expansions
        for e, h in out_edges(u):
            expansions += 1
            if depth + 1 == k:
                if h == s:
                    count += 1
                    if mode == "list":
                        found.append(ClosedWalk(n, tuple(vpath), tuple(epath) + (e,)))
                    elif mode == "vertices":
                        verts.update(vpath)
                continue
            if h <= s or h in on_path:
                continue
            if prune:
                r = k - depth - 1
                if r < n and suf[r][h] != pre[r][s]:
                    continue
            vpath.append(h)
            epath.append(e)
            on_path.add(h)
            rec(s, h, depth + 1)
            vpath.pop()
            epath.pop()
            on_path.discard(h)
        if limit is not None and expansions > limit:
            raise ResourceLimitExceeded(
                f"cycle search exceeded {limit} expansions", partial=found, found=count)

    for s in starts:
        if prune and k < n and suf[k][s] != pre[k][s]:
            continue
        vpath[:] = [s]
        epath.clear()
        on_path.clear()
        on_path.add(s)
        rec(s, s, 0)
    return {"list": found, "count": count, "vertices": verts}[mode], expansions


def _scan_worker(args):
    n, implicit, k, lo, hi, mode, prune, limit = args
    g = _graph(n, implicit)
    try:
        return _cycle_scan(g, k, range(lo, hi), mode, prune, limit), None
    except ResourceLimitExceeded as exc:
        return (exc.partial, limit), exc.found


def _chunks(N: int, parts: int) -> list[tuple[int, int]]:
    step = -(-N // parts)
    return [(lo, min(N, lo + step)) for lo in range(0, N, step)]


def _run_scan(g, k: int, mode: str, prune: bool, limit: int | None, workers: int):
    if k < 1:
        raise DomainError("cycle length must be >= 1")
    N = g.vertex_count
    if workers <= 1:
        return _cycle_scan(g, k, range(N), mode, prune, limit)[0]
    jobs = [(g.n, g.implicit, k, lo, hi, mode, prune, limit) for lo, hi in _chunks(N, workers * 4)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_scan_worker, jobs))
    total_exp = 0
    broke = None
    for (res, exp), partial_found in parts:
        total_exp += exp
        if partial_found is not None:
            broke = partial_found
    if broke is not None or (limit is not None and total_exp > limit):
        raise ResourceLimitExceeded(f"cycle search exceeded {limit} expansions", found=broke or 0)
    results = [res for (res, _), _ in parts]
    if mode == "list":
        return [c for chunk in results for c in chunk]
    if mode == "count":
        return sum(results)
    return set().union(*results)


def enumerate_k_cycles(g, k: int, *, prune: bool = False, limit: int | None = None,
                       workers: int = 1) -> list[ClosedWalk]:
    """All k-cycle classes, each once, rooted at its minimum-rank vertex.

    Order is by root rank, then DFS order (edge rank) below it. With
    ``prune`` the search skips vertices whose suffix pattern cannot meet the
    root's prefix pattern in the remaining steps.
    """
    return _run_scan(g, k, "list", prune, limit, workers)


def count_k_cycles(g, k: int, *, prune: bool = False, limit: int | None = None,
                   workers: int = 1) -> int:
    return _run_scan(g, k, "count", prune, limit, workers)


def cycle_vertex_set(g, k: int, *, prune: bool = False, limit: int | None = None,
                     workers: int = 1) -> set[int]:
    return _run_scan(g, k, "vertices", prune, limit, workers)


def v_count(g, k: int, *, prune: bool = False, limit: int | None = None, workers: int = 1) -> int:
    """Number of vertices lying on at least one k-cycle."""
    return len(cycle_vertex_set(g, k, prune=prune, limit=limit, workers=workers))


def _rooted_search(g, a: int, k: int, simple: bool, limit: int | None):
    """Closed k-walks starting at vertex rank ``a``; exact backward pruning."""
    n = g.n
    back = [None] * k
    frontier = {a}
    for r in range(1, k):
        frontier = {t for v in frontier for _, t in g.in_edges(v)}
        back[r] = frontier
    out: list[ClosedWalk] = []
    vpath = [a]
    epath: list[int] = []
    expansions = 0

    def rec(u: int, depth: int) -> None:
        nonlocal expansions
        for e, h in g.out_edges(u):
            expansions += 1
            if depth + 1 == k:
                if h == a:
                    out.append(ClosedWalk(n, tuple(vpath), tuple(epath) + (e,)))
                continue
            if h not in back[k - depth - 1] or (simple and h in vpath):
                continue
            vpath.append(h)
            epath.append(e)
            rec(h, depth + 1)
            vpath.pop()
            epath.pop()
        if limit is not None and expansions > limit:
            raise ResourceLimitExceeded(f"walk search exceeded {limit} expansions",
                                        partial=out, found=len(out))

    rec(a, 0)
    return out


def cycles_through(g, a: Sequence[int], k: int, *, limit: int | None = None) -> list[ClosedWalk]:
    """k-cycle classes containing ``a``, rooted at ``a``."""
    return _rooted_search(g, g.rank(a), k, True, limit)


def coexisting_cycle_lengths(g, a: Sequence[int], k_max: int) -> set[int]:
    """Lengths k in 2..k_max for which ``a`` lies on some k-cycle."""
    ra = g.rank(a)
    return {k for k in range(2, k_max + 1) if _rooted_search(g, ra, k, True, None)}


# -- closed-walk classes ----------------------------------------------------

def closed_walks_through(g, a: Sequence[int], k: int, *, limit: int | None = None) -> list[ClosedWalk]:
    """Every closed k-walk class visiting ``a``, in canonical form, sorted."""
    seen = {w.key: w.canonical() for w in _rooted_search(g, g.rank(a), k, False, limit)}
    return [seen[key] for key in sorted(seen)]


def vertex_sequence_classes(walks: Sequence[ClosedWalk]) -> dict[tuple[int, ...], int]:
    """Collapse edge-distinguished classes to vertex-sequence rotation classes.

    Maps each canonical vertex-rank sequence to the number of edge choices
    realizing it.
    """
    out: Counter = Counter()
    for w in walks:
        vr = w.vertex_ranks
        out[min(vr[i:] + vr[:i] for i in range(len(vr)))] += 1
    return dict(sorted(out.items()))


def enumerate_closed_walk_classes(g, k: int, *, limit: int | None = None) -> list[ClosedWalk]:
    """Direct enumeration: rooted DFS from each minimum vertex, deduplicated."""
    n = g.n
    seen: dict = {}
    expansions = 0
    vpath: list[int] = []
    epath: list[int] = []

    def rec(s: int, u: int, depth: int) -> None:
        nonlocal expansions
        for e, h in g.out_edges(u):
            expansions += 1
            if depth + 1 == k:
                if h == s:
                    w = ClosedWalk(n, tuple(vpath), tuple(epath) + (e,)).canonical()
                    seen.setdefault(w.pairs, w)
                continue
            if h < s:
                continue
            vpath.append(h)
            epath.append(e)
            rec(s, h, depth + 1)
            vpath.pop()
            epath.pop()
        if limit is not None and expansions > limit:
            raise ResourceLimitExceeded(f"walk search exceeded {limit} expansions",
                                        partial=list(seen.values()), found=len(seen))

    for s in range(g.vertex_count):
        vpath[:] = [s]
        epath.clear()
        rec(s, s, 0)
    return [seen[key] for key in sorted(seen)]


def _totient(m: int) -> int:
    result, p, x = m, 2, m
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


def rooted_closed_walk_count(g, d: int) -> int:
    """Closed d-walks with a marked start (the trace of A^d)."""
    _check_eager(g)
    return int(closed_walk_diagonal(g, d).sum())


def count_closed_walk_classes(g, k: int) -> int:
    """Rotation classes of closed k-walks, by averaging over the rotation group."""
    if k < 1:
        raise DomainError("walk length must be >= 1")
    total = sum(_totient(k // d) * rooted_closed_walk_count(g, d)
                for d in range(1, k + 1) if k % d == 0)
    assert total % k == 0
    return total // k


# -- vertices on closed walks ------------------------------------------------

def w_count(n: int, k: int, *, chunk: int = 1 << 20) -> int:
    """Permutations of length n satisfying the closed k-walk condition.

    Vectorized scan: for every pair i < j among the first n-k positions the
    comparison a_i < a_j must agree with a_{i+k} < a_{j+k}.
    """
    if not 2 <= k <= n - 1:
        raise DomainError(f"k={k} outside 2..{n - 1}")
    m = n - k
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    it = permutations(range(1, n + 1))
    total = 0
    while True:
        block = list(islice(it, chunk))
        if not block:
            break
        P = np.array(block, dtype=np.int8)
        ok = np.ones(len(P), dtype=bool)
        for i, j in pairs:
            ok &= (P[:, i] < P[:, j]) == (P[:, i + k] < P[:, j + k])
        total += int(ok.sum())
    return total


def closed_walk_members(g, k: int) -> np.ndarray:
    """Boolean array: vertex rank lies on a closed k-walk (graph computation)."""
    _check_eager(g)
    return closed_walk_diagonal(g, k) > 0


def w_formula(n: int, k: int) -> int:
    if not (2 <= k <= n - 1 and n <= 2 * k):
        raise DomainError(f"exact vertex count needs 2 <= k <= n-1 and n <= 2k, got n={n}, k={k}")
    return factorial(n) // factorial(n - k)


def w_upper_bound(n: int, k: int) -> int:
    if not (n > 2 * k and n % 2 == 1 and k >= 3):
        raise DomainError(f"upper bound needs odd n > 2k and k >= 3, got n={n}, k={k}")
    inner = ((2 * n + 1) * (n + 1) * (n - 1) // 2 + k + (n - 5) // 2 - 2
             - (n - 1) * ceil((n - 1) / 4))
    return factorial(n - 2) // factorial(n - k) * inner


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % p for p in range(2, int(k ** 0.5) + 1))


def v_prime_formula(n: int, k: int, w: int) -> int:
    if not _is_prime(k):
        raise DomainError(f"k={k} is not prime")
    if not 2 <= k <= n - 1:
        raise DomainError(f"k={k} outside 2..{n - 1}")
    return w - 2


def two_cycle_vertex_formula(n: int) -> int:
    if n < 4:
        raise DomainError("the 2-cycle vertex count holds for n >= 4")
    return 2 * n + 2


def two_cycle_count_formula(n: int) -> int:
    if n < 4:
        raise DomainError("the 2-cycle count holds for n >= 4")
    return n + 2 if n % 2 == 0 else n + 3


# -- 2-cycle structure -------------------------------------------------------

@dataclass(frozen=True)
class SpecialTwoCycleVertices:
    n: int
    parity: str
    doubly_covered: tuple[Perm, ...] = ()  # even n: vertices on two 2-cycles
    multiedge_pairs: tuple[tuple[Perm, Perm], ...] = ()  # odd n: (a, sigma(a)) pairs


def special_two_cycle_vertices(n: int) -> SpecialTwoCycleVertices:
    if n < 4:
        raise DomainError("the special 2-cycle vertices are defined for n >= 4")
    if n % 2 == 0:
        h = n // 2
        a = tuple(x for i in range(1, h + 1) for x in (i, h + i))
        return SpecialTwoCycleVertices(n, "even", doubly_covered=(a, complement(a)))
    h = (n - 1) // 2
    a = tuple(x for i in range(1, h + 1) for x in (h + i, i)) + (n,)
    b = complement(a)
    return SpecialTwoCycleVertices(n, "odd", multiedge_pairs=((a, cyclic_shift(a)), (b, cyclic_shift(b))))


@dataclass
class TwoCycleStructure:
    n: int
    cycle_count: int
    vertices: set[int]
    cycles_per_vertex: dict[int, int]
    partners: dict[int, set[int]]
    parallel_edge_cycles: int
    parallel_edge_pairs: set[frozenset[int]]

    @property
    def doubly_covered(self) -> set[int]:
        return {v for v, c in self.cycles_per_vertex.items() if c >= 2}


def two_cycle_structure(g, *, workers: int = 1) -> TwoCycleStructure:
    cycles = enumerate_k_cycles(g, 2, workers=workers)
    per_vertex: Counter = Counter()
    partners: dict[int, set[int]] = defaultdict(set)
    mult = {}
    for c in cycles:
        a, b = c.vertex_ranks
        per_vertex[a] += 1
        per_vertex[b] += 1
        partners[a].add(b)
        partners[b].add(a)
    parallel = 0
    pairs: set[frozenset[int]] = set()
    for c in cycles:
        a, b = c.vertex_ranks
        for t, h in ((a, b), (b, a)):
            if (t, h) not in mult:
                mult[t, h] = sum(1 for _, x in g.out_edges(t) if x == h)
        if mult[a, b] > 1 or mult[b, a] > 1:
            parallel += 1
            pairs.add(frozenset((a, b)))
    return TwoCycleStructure(g.n, len(cycles), set(per_vertex), dict(per_vertex),
                             dict(partners), parallel, pairs)


# -- census report -----------------------------------------------------------

# cycle counts stated outright for the smallest interesting graph
G3_CYCLE_COUNTS = {1: 2, 2: 6, 3: 26}


@dataclass
class CensusReport:
    n: int
    k: int
    cycle_count: int
    walk_class_count: int
    vertices_in_cycles: int
    vertices_in_walks: int
    formula_values: dict[str, int] = field(default_factory=dict)
    agreement: dict[str, bool] = field(default_factory=dict)
    unpredicted: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "CensusReport":
        return cls(**d)

    @property
    def ok(self) -> bool:
        return all(self.agreement.values())


def census(n: int, k: int, *, workers: int = 1, limit: int | None = None,
           prune: bool = True) -> CensusReport:
    """Compute C, v, w and walk-class counts for G(n) at length k and check
    every closed form whose hypotheses cover (n, k)."""
    g = _graph(n, False)
    found = cycle_vertex_set(g, k, prune=prune, limit=limit, workers=workers)
    C = count_k_cycles(g, k, prune=prune, limit=limit, workers=workers)
    v = len(found)
    if 2 <= k <= n - 1:
        w = w_count(n, k)
    else:
        w = int(closed_walk_members(g, k).sum())
    walks = count_closed_walk_classes(g, k)

    fv: dict[str, int] = {}
    ag: dict[str, bool] = {}
    if n == 3 and k in G3_CYCLE_COUNTS:
        fv["C_G3"] = G3_CYCLE_COUNTS[k]
        ag["C_G3"] = C == fv["C_G3"]
    if k == 2 and n >= 4:
        fv["v2"] = two_cycle_vertex_formula(n)
        ag["v2"] = v == fv["v2"]
        fv["C2"] = two_cycle_count_formula(n)
        ag["C2"] = C == fv["C2"]
    if 2 <= k <= n - 1 and n <= 2 * k:
        fv["w_exact"] = w_formula(n, k)
        ag["w_exact"] = w == fv["w_exact"]
    if k >= 3 and n > 2 * k and n % 2 == 1:
        fv["w_upper_bound"] = w_upper_bound(n, k)
        ag["w_upper_bound"] = w <= fv["w_upper_bound"]
    if 2 <= k <= n - 1 and _is_prime(k):
        fv["v_prime"] = v_prime_formula(n, k, w)
        ag["v_prime"] = v == fv["v_prime"]
    ag["v_le_w"] = v <= w
    ag["cycles_le_walks"] = C <= walks

    unpredicted = []
    if not {"C_G3", "C2"} & fv.keys():
        unpredicted.append("cycle_count")
    if not {"v2", "v_prime"} & fv.keys():
        unpredicted.append("vertices_in_cycles")
    if "w_exact" not in fv:
        unpredicted.append("vertices_in_walks")
    unpredicted.append("walk_class_count")
    return CensusReport(n, k, C, walks, v, w, fv, ag, unpredicted)


def describe_cycle(c: ClosedWalk) -> str:
    return "(" + ", ".join(format_perm(v) for v in c.vertices) + ")"
