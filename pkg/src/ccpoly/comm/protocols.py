"""Deterministic communication complexity: one-round cost and exact
protocol-tree depth by memoized search."""

from __future__ import annotations

from dataclasses import dataclass

from .._bits import ceil_log2
from ..linalg import rank_of_int_rows
from .problem import CommProblem, comm_rank

D_EXACT_CAP = 16


def distinct_row_count(p: CommProblem) -> int:
    return len(set(p.int_rows))


def d_one_round(p: CommProblem) -> int:
    """Alice names her row class, Bob answers: ceil(log2 #distinct rows) + 1."""
    return ceil_log2(distinct_row_count(p)) + 1


@dataclass(frozen=True)
class DeterministicCost:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"D is only bracketed: [{self.lower}, {self.upper}]")
        return self.lower


class _TreeSearch:
    """Minimum protocol-tree depth over submatrices keyed by (row-set, col-set).

    Rows and columns are deduplicated at every node; identical rows can
    always share a path, so this does not change the optimum.
    """

    def __init__(self, rows: list[int], ncols: int):
        self.pat = rows          # row x as a bitmask over columns
        self.ncols = ncols
        self.lo: dict[tuple[int, int], int] = {}
        self.hi: dict[tuple[int, int], int] = {}

    def canon(self, rmask: int, cmask: int) -> tuple[int, int]:
        seen: dict[int, int] = {}
        x = 0
        m = rmask
        while m:
            if m & 1:
                seen.setdefault(self.pat[x] & cmask, x)
            m >>= 1
            x += 1
        rmask = 0
        for x in seen.values():
            rmask |= 1 << x
        cols_seen: dict[int, int] = {}
        y = 0
        m = cmask
        rows = sorted(seen.values())
        while m:
            if m & 1:
                key = 0
                for i, x in enumerate(rows):
                    if self.pat[x] >> y & 1:
                        key |= 1 << i
                cols_seen.setdefault(key, y)
            m >>= 1
            y += 1
        cmask = 0
        for y in cols_seen.values():
            cmask |= 1 << y
        return rmask, cmask

    def _sub(self, rmask: int, cmask: int) -> list[list[int]]:
        cols = [y for y in range(self.ncols) if cmask >> y & 1]
        return [[self.pat[x] >> y & 1 for y in cols]
                for x in range(len(self.pat)) if rmask >> x & 1]

    def bounds(self, key: tuple[int, int]) -> tuple[int, int]:
        if key not in self.lo:
            rmask, cmask = key
            nr, nc = rmask.bit_count(), cmask.bit_count()
            if nr <= 1 and nc <= 1:
                self.lo[key] = self.hi[key] = 0
            else:
                sub = self._sub(rmask, cmask)
                comp = [[1 - v for v in r] for r in sub]
                # leaves >= rank(M) + rank(J - M)
                leaves = rank_of_int_rows(sub) + rank_of_int_rows(comp)
                self.lo[key] = max(1, ceil_log2(leaves))
                self.hi[key] = min(ceil_log2(nr), ceil_log2(nc)) + 1
        return self.lo[key], self.hi[key]

    def at_most(self, rmask: int, cmask: int, d: int) -> bool:
        key = self.canon(rmask, cmask)
        lo, hi = self.bounds(key)
        if hi <= d:
            return True
        if lo > d:
            return False
        rmask, cmask = key
        if self._try_splits(rmask, cmask, d, rows=True) or \
                self._try_splits(rmask, cmask, d, rows=False):
            self.hi[key] = d
            return True
        self.lo[key] = d + 1
        return False

    def _try_splits(self, rmask: int, cmask: int, d: int, rows: bool) -> bool:
        speaker = rmask if rows else cmask
        members = [i for i in range(speaker.bit_length()) if speaker >> i & 1]
        if len(members) < 2:
            return False
        first, rest = members[0], members[1:]
        # canonical halves: the part holding the smallest member
        for sel in range((1 << len(rest)) - 1):
            part = 1 << first
            for j, i in enumerate(rest):
                if sel >> j & 1:
                    part |= 1 << i
            other = speaker & ~part
            if rows:
                a, b = (part, cmask), (other, cmask)
            else:
                a, b = (rmask, part), (rmask, other)
            if self.at_most(*a, d - 1) and self.at_most(*b, d - 1):
                return True
        return False


def d_exact(p: CommProblem, cap: int = D_EXACT_CAP) -> DeterministicCost:
    """Exact deterministic complexity D(f) for matrices up to cap x cap
    (after removing duplicate rows/columns); above that, the interval
    [ceil(log2 rank), D^1round]."""
    nrows, ncols = p.shape
    pat = [sum(v << y for y, v in enumerate(row)) for row in p.int_rows]
    search = _TreeSearch(pat, ncols)
    key = search.canon((1 << nrows) - 1, (1 << ncols) - 1)
    if key[0].bit_count() > cap or key[1].bit_count() > cap:
        return DeterministicCost(ceil_log2(comm_rank(p)), d_one_round(p))
    lo, hi = search.bounds(key)
    for d in range(lo, hi):
        if search.at_most(*key, d):
            return DeterministicCost(d, d)
    return DeterministicCost(hi, hi)
