"""Brute-force reference implementations, written independently of the package
(no shared code paths) and used only on tiny instances."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import sympy


def rank(rows) -> int:
    return sympy.Matrix(rows).rank()


def mobius(table, n) -> dict[int, int]:
    """Coefficient of x^S is sum over T subset S of (-1)^{|S|-|T|} g(T)."""
    out = {}
    for S in range(1 << n):
        c = 0
        T = S
        while True:
            c += (-1) ** (bin(S).count("1") - bin(T).count("1")) * table[T]
            if T == 0:
                break
            T = (T - 1) & S
        if c:
            out[S] = c
    return out


def evaluate_poly(coeffs: dict[int, Fraction], x: int):
    return sum((c for m, c in coeffs.items() if m & x == m), Fraction(0))


def so(table, n) -> int:
    """Max over x of the largest family of disjoint zero-blocks each of whose
    flips changes g (any blocks, not only minimal ones)."""
    best = 0
    for x in range(1 << n):
        zeros = [i for i in range(n) if not x >> i & 1]
        sens = []
        for k in range(1, len(zeros) + 1):
            for B in combinations(zeros, k):
                m = sum(1 << i for i in B)
                if table[x | m] != table[x]:
                    sens.append(m)

        def pack(avail, used):
            top = 0
            for i, m in enumerate(avail):
                if not m & used:
                    top = max(top, 1 + pack(avail[i + 1:], used | m))
            return top

        best = max(best, pack(sens, 0))
    return best


def deterministic_cost(rows) -> int:
    """D by recursion over every row or column bipartition of every submatrix."""
    rows = [tuple(r) for r in rows]

    @lru_cache(maxsize=None)
    def D(R: frozenset, C: frozenset) -> int:
        vals = {rows[i][j] for i in R for j in C}
        if len(vals) <= 1:
            return 0
        best = None
        for side, split_rows in ((sorted(R), True), (sorted(C), False)):
            first, rest = side[0], side[1:]
            for mask in range(1 << len(rest)):
                A = frozenset([first] + [rest[k] for k in range(len(rest)) if mask >> k & 1])
                B = frozenset(side) - A
                if not B:
                    continue
                if split_rows:
                    cost = 1 + max(D(A, C), D(B, C))
                else:
                    cost = 1 + max(D(R, A), D(R, B))
                best = cost if best is None else min(best, cost)
        return best

    return D(frozenset(range(len(rows))), frozenset(range(len(rows[0]))))


def cover_number(rows, target) -> int:
    """Smallest number of target-monochromatic rectangles covering all target cells."""
    nr, nc = len(rows), len(rows[0])
    cells = {(i, j) for i in range(nr) for j in range(nc) if rows[i][j] == target}
    if not cells:
        return 0
    rects = set()
    for k in range(1, nr + 1):
        for R in combinations(range(nr), k):
            C = frozenset(j for j in range(nc) if all(rows[i][j] == target for i in R))
            if C:
                rects.add(frozenset((i, j) for i in R for j in C))
    rects = list(rects)
    for k in range(1, len(cells) + 1):
        for pick in combinations(rects, k):
            if set().union(*pick) >= cells:
                return k
    raise AssertionError("unreachable")


def minimax_error(table, n, support) -> float:
    """min_a max_x |g(x) - p_a(x)| by a plain scipy LP (float)."""
    from scipy.optimize import linprog

    k = len(support)
    A, b = [], []
    for x in range(1 << n):
        row = [1.0 if m & x == m else 0.0 for m in support]
        A.append(row + [-1.0])
        b.append(float(table[x]))
        A.append([-v for v in row] + [-1.0])
        b.append(-float(table[x]))
    c = [0.0] * k + [1.0]
    res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * k + [(0, None)], method="highs")
    return float(res.fun)


def singular_count_2x2() -> int:
    return sum(1 for e in product((0, 1), repeat=4) if e[0] * e[3] - e[1] * e[2] == 0)


def distinct_rows(rows) -> int:
    return len({tuple(r) for r in rows})

