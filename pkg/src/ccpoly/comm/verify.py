"""Exhaustive check of rank(M_{g(x o y)}) = mon(g) over all g on n variables."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..linalg import rank_of_int_rows

MAX_VERIFY_ARITY = 4


@dataclass
class IdentityReport:
    n: int
    composition: str
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {"n": self.n, "composition": self.composition, "checked": self.checked,
                "counterexamples": self.counterexamples}


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CCPOLY_WORKERS", "1")))
    except ValueError:
        return 1


def _mon_counts(n: int, start: int, stop: int, flip: bool) -> np.ndarray:
    """mon(g) for every g with table integer in [start, stop); with ``flip``
    the count is for z -> g(not z), which is what the OR matrix diagonalizes."""
    size = 1 << n
    codes = np.arange(start, stop, dtype=np.int64)
    tables = ((codes[:, None] >> np.arange(size)) & 1).astype(np.int64)
    if flip:
        tables = tables[:, ::-1].copy()
    for i in range(n):
        view = tables.reshape(len(codes), -1, 2, 1 << i)
        view[:, :, 1, :] -= view[:, :, 0, :]
    return np.count_nonzero(tables, axis=1)


def _check_range(n: int, composition: str, start: int, stop: int) -> tuple[int, list[dict]]:
    size = 1 << n
    op = (lambda x, y: x & y) if composition == "and" else (lambda x, y: x | y)
    index = [[op(x, y) for y in range(size)] for x in range(size)]
    mons = _mon_counts(n, start, stop, composition == "or")
    bad = []
    for k, code in enumerate(range(start, stop)):
        t = [(code >> i) & 1 for i in range(size)]
        r = rank_of_int_rows([[t[v] for v in row] for row in index])
        if r != int(mons[k]):
            bad.append({"table": code, "rank": r, "mon": int(mons[k])})
    return stop - start, bad


def verify_rank_eq_mon(n: int, composition: str = "and", workers: int | None = None) -> IdentityReport:
    """Iterate all 2^(2^n) functions g and compare rank(M_f) with mon(g).

    For OR the matching count is mon of z -> g(not z), since
    g(x or y) = g'(not x and not y).  XOR is not covered: its rank is the
    Fourier sparsity, not a monomial count in this basis.
    """
    composition = composition.lower()
    if composition not in ("and", "or"):
        raise ValueError(f"rank = mon identity is checked for AND/OR, not {composition!r}")
    if not 1 <= n <= MAX_VERIFY_ARITY:
        raise ValueError(f"exhaustive check supports 1 <= n <= {MAX_VERIFY_ARITY}")
    total = 1 << (1 << n)
    workers = workers or worker_count()
    chunk = max(1, min(4096, total // workers or 1))
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    report = IdentityReport(n, composition)
    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_range, *zip(*[(n, composition, a, b) for a, b in ranges])))
    else:
        results = [_check_range(n, composition, a, b) for a, b in ranges]
    for checked, bad in results:
        report.checked += checked
        report.counterexamples.extend(bad)
    report.counterexamples.sort(key=lambda d: d["table"])
    return report
