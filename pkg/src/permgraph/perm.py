"""Permutation primitives: standardization, complement, cyclic shift, ranking.

Permutations are plain tuples of the values 1..L. Every function accepts any
integer sequence and returns a tuple, so results hash and compare in O(L).
"""

from __future__ import annotations

from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

from .errors import InvalidWordError

Perm = tuple[int, ...]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if not p or sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidWordError(f"not a permutation of 1..{len(p)}: {p!r}")
    return p


def standardize(w: Sequence[int]) -> Perm:
    """Relabel the distinct values of ``w`` onto 1..len(w), preserving order."""
    if len(w) == 0:
        raise InvalidWordError("cannot standardize an empty word")
    order = sorted(range(len(w)), key=w.__getitem__)
    out = [0] * len(w)
    prev = None
    for r, i in enumerate(order, 1):
        if prev is not None and w[i] == prev:
            raise InvalidWordError(f"repeated value {prev} in {tuple(w)!r}")
        prev = w[i]
        out[i] = r
    return tuple(out)


def complement(p: Sequence[int]) -> Perm:
    m = len(p) + 1
    return tuple(m - x for x in p)


def cyclic_shift(p: Sequence[int]) -> Perm:
    return tuple(p[1:]) + (p[0],)


def is_alternating(p: Sequence[int]) -> bool:
    """True iff the descents of ``p`` are exactly the positions of one parity.

    Put differently, consecutive differences alternate in sign.
    """
    if len(p) < 2:
        raise InvalidWordError("alternation needs length >= 2")
    up = p[0] < p[1]
    for i in range(1, len(p) - 1):
        nxt = p[i] < p[i + 1]
        if nxt == up:
            return False
        up = nxt
    return True


def identity(L: int) -> Perm:
    return tuple(range(1, L + 1))


def reversal(L: int) -> Perm:
    return tuple(range(L, 0, -1))


def is_trivial(p: Sequence[int]) -> bool:
    p = tuple(p)
    L = len(p)
    return p == identity(L) or p == reversal(L)


def rank(p: Sequence[int]) -> int:
    """Lexicographic (Lehmer code) rank of ``p`` among permutations of its length."""
    L = len(p)
    r = 0
    for i in range(L):
        smaller = 0
        pi = p[i]
        for j in range(i + 1, L):
            if p[j] < pi:
                smaller += 1
        r = r * (L - i) + smaller
    return r


def unrank(L: int, r: int) -> Perm:
    if L < 1:
        raise ValueError(f"length must be >= 1, got {L}")
    if not 0 <= r < factorial(L):
        raise IndexError(f"rank {r} out of range for length {L}")
    pool = list(range(1, L + 1))
    out = []
    for i in range(L, 0, -1):
        f = factorial(i - 1)
        q, r = divmod(r, f)
        out.append(pool.pop(q))
    return tuple(out)


def all_perms(L: int) -> Iterator[Perm]:
    """Permutations of 1..L in rank order."""
    return permutations(range(1, L + 1))


def parse_perm(text: str) -> Perm:
    """Parse ``"21435"``, ``"3,6,1,10"`` or the letter form ``"3615827a49b"`` (a=10)."""
    text = text.strip()
    if "," in text or " " in text:
        parts = [t for t in text.replace(",", " ").split() if t]
        try:
            vals = [int(t) for t in parts]
        except ValueError:
            raise InvalidWordError(f"malformed permutation {text!r}") from None
    else:
        vals = []
        for ch in text:
            if ch.isdigit() and ch != "0":
                vals.append(int(ch))
            elif ch.lower() in _LETTERS:
                vals.append(10 + _LETTERS.index(ch.lower()))
            else:
                raise InvalidWordError(f"malformed permutation {text!r}")
    return check_perm(vals)


def format_perm(p: Sequence[int]) -> str:
    """Digit string for length <= 9, comma separated beyond."""
    if len(p) <= 9:
        return "".join(str(x) for x in p)
    return ",".join(str(x) for x in p)
