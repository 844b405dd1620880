"""Approximate rank: ALS witnesses (upper bounds) and the few exact lower bounds
that are actually provable here."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np

from ..linalg import ExactMatrix, rank_exact, rank_factorization
from .lp import THIRD

MAX_DIM = 64
DEFAULT_RESTARTS = 200
DEFAULT_SWEEPS = 500
DEFAULT_TOL = 1e-9
DECIMALS = 12
_STALL = 1e-9
_PATIENCE = 25
_MARGIN = 1e-10


@dataclass(frozen=True)
class ApproxRankWitness:
    """left (m x r) @ right (r x k) within max_dev of the target, entrywise.

    Factors hold exact rationals (decimal-rounded ALS output, or an exact
    factorization); max_dev is recomputed from them, never copied from the
    optimizer.
    """

    left: tuple[tuple[Fraction, ...], ...]
    right: tuple[tuple[Fraction, ...], ...]
    r: int
    max_dev: Fraction
    method: str
    restart: int | None = None

    def product(self) -> list[list[Fraction]]:
        k = len(self.right[0]) if self.right else 0
        return [[sum((row[t] * self.right[t][j] for t in range(self.r)), Fraction(0))
                 for j in range(k)] for row in self.left]

    def to_json(self) -> dict:
        fmt = lambda v: str(v) if self.method == "exact-factorization" else f"{float(v):.{DECIMALS}f}"
        return {"r": self.r, "method": self.method, "restart": self.restart,
                "precision": DECIMALS if self.method == "als" else None,
                "left": [[fmt(v) for v in row] for row in self.left],
                "right": [[fmt(v) for v in row] for row in self.right],
                "max_dev": str(self.max_dev), "max_dev_real": round(float(self.max_dev), 12)}


@dataclass(frozen=True)
class ApproxRankSearch:
    witness: ApproxRankWitness | None
    best_dev: float | None
    restarts: int
    exact_rank: int

    @property
    def success(self) -> bool:
        return self.witness is not None


def exact_max_dev(M: ExactMatrix, left, right) -> Fraction:
    rows = M.to_rows()
    r = len(right)
    worst = Fraction(0)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            s = sum((left[i][t] * right[t][j] for t in range(r)), Fraction(0))
            worst = max(worst, abs(s - Fraction(v)))
    return worst


def _padded_factorization(M: ExactMatrix, r: int) -> ApproxRankWitness:
    fac = rank_factorization(M)
    L = [list(row) + [Fraction(0)] * (r - fac.r) for row in fac.left.to_rows()]
    R = [list(row) for row in fac.right.to_rows()] + [[Fraction(0)] * M.cols for _ in range(r - fac.r)]
    L = tuple(tuple(Fraction(v) for v in row) for row in L)
    R = tuple(tuple(Fraction(v) for v in row) for row in R)
    return ApproxRankWitness(L, R, r, exact_max_dev(M, L, R), "exact-factorization")


def _to_exact(A: np.ndarray) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(Decimal(f"{v:.{DECIMALS}f}")) for v in row) for row in A)


def _als_restart(T: np.ndarray, r: int, eps: float, rng, sweeps: int) -> tuple[np.ndarray, np.ndarray, float]:
    m, k = T.shape
    U = rng.uniform(-1.0, 1.0, (m, r))
    V = rng.uniform(-1.0, 1.0, (r, k))
    lo, hi = T - eps, T + eps
    best = np.inf
    best_uv = (U, V)
    since = 0
    for _ in range(sweeps):
        target = np.clip(U @ V, lo, hi)
        U = np.linalg.lstsq(V.T, target.T, rcond=None)[0].T
        target = np.clip(U @ V, lo, hi)
        V = np.linalg.lstsq(U, target, rcond=None)[0]
        dev = float(np.max(np.abs(U @ V - T)))
        if dev < best - _STALL:
            best, best_uv, since = dev, (U, V), 0
        else:
            since += 1
        if best <= eps or since >= _PATIENCE:
            break
    return best_uv[0], best_uv[1], best


def approx_rank_search(M: ExactMatrix, eps=THIRD, r: int = 1, seed: int = 0,
                       restarts: int = DEFAULT_RESTARTS, sweeps: int = DEFAULT_SWEEPS,
                       tol: float = DEFAULT_TOL) -> ApproxRankSearch:
    """Look for a rank-r matrix within eps (+ tol) of M entrywise.

    Alternating least squares against the box [M - eps, M + eps]; restart i
    draws its uniform(-1, 1) start from the generator seeded by (seed, i).
    Failure is inconclusive.
    """
    if max(M.rows, M.cols) > MAX_DIM:
        raise ValueError(f"approximate-rank search supports dimensions <= {MAX_DIM}")
    if r < 0:
        raise ValueError("rank must be non-negative")
    eps = Fraction(eps)
    limit = eps + Fraction(tol)
    exact = rank_exact(M)
    if r >= exact:
        return ApproxRankSearch(_padded_factorization(M, r), 0.0, 0, exact)
    if r == 0:
        dev = max((abs(Fraction(v)) for v in M.entries), default=Fraction(0))
        if dev <= limit:
            w = ApproxRankWitness(tuple(() for _ in range(M.rows)), (), 0, dev, "zero")
            return ApproxRankSearch(w, float(dev), 0, exact)
        return ApproxRankSearch(None, float(dev), 0, exact)
    T = M.to_numpy().astype(float)
    aim = float(eps) - _MARGIN
    best_dev = None
    loose = None   # within eps + tol but not eps: kept only if nothing strict turns up
    for i in range(restarts):
        rng = np.random.default_rng([seed, i])
        U, V, dev = _als_restart(T, r, aim, rng, sweeps)
        best_dev = dev if best_dev is None else min(best_dev, dev)
        if dev <= float(limit):
            L, R = _to_exact(U), _to_exact(V)
            md = exact_max_dev(M, L, R)
            if md <= eps:
                return ApproxRankSearch(ApproxRankWitness(L, R, r, md, "als", i), float(md), i + 1, exact)
            if md <= limit and (loose is None or md < loose.max_dev):
                loose = ApproxRankWitness(L, R, r, md, "als", i)
    if loose is not None:
        return ApproxRankSearch(loose, float(loose.max_dev), restarts, exact)
    return ApproxRankSearch(None, best_dev, restarts, exact)


def approx_rank_upper(M: ExactMatrix, eps=THIRD, r: int = 1, seed: int = 0,
                      restarts: int = DEFAULT_RESTARTS, sweeps: int = DEFAULT_SWEEPS,
                      tol: float = DEFAULT_TOL) -> ApproxRankWitness | None:
    return approx_rank_search(M, eps, r, seed, restarts, sweeps, tol).witness


# ---------------------------------------------------------------------------
# exact lower-bound tools
# ---------------------------------------------------------------------------

def rank1_feasible(M: ExactMatrix, eps=THIRD) -> bool:
    """Is some matrix of rank <= 1 within eps of the 0/1 matrix M, exactly?

    Rows/columns without a 1 can be zeroed, and a sign flip per connected
    component of the 1-entries makes the rest positive.  Writing u_i v_j
    bounds as difference constraints on logs, feasibility is the absence of
    a cycle whose factor product is < 1 (multiplicative Bellman-Ford over
    the rationals).
    """
    if not M.is_boolean():
        raise ValueError("exact rank-1 feasibility is implemented for 0/1 matrices")
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    rows = M.to_rows()
    if all(v <= eps for row in rows for v in row):
        return True
    # some entry is 1 and eps < 1
    act_r = [i for i in range(M.rows) if any(rows[i])]
    act_c = [j for j in range(M.cols) if any(rows[i][j] for i in range(M.rows))]
    if eps == 0:
        return rank_exact(M.submatrix(act_r, act_c)) <= 1 and all(
            rows[i][j] for i in act_r for j in act_c)
    lo, hi = 1 - eps, 1 + eps
    # nodes: a_i (row i) and c_j = -log v_j (column j)
    nr = len(act_r)
    edges: list[tuple[int, int, Fraction]] = []
    for ii, i in enumerate(act_r):
        for jj, j in enumerate(act_c):
            a, c = ii, nr + jj
            if rows[i][j]:
                edges.append((c, a, hi))        # u_i v_j <= 1 + eps
                edges.append((a, c, 1 / lo))    # u_i v_j >= 1 - eps
            else:
                edges.append((c, a, eps))       # u_i v_j <= eps
    nodes = nr + len(act_c)
    dist = [Fraction(1)] * nodes
    for _ in range(nodes):
        changed = False
        for u, v, f in edges:
            cand = dist[u] * f
            if cand < dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            return True
    return not any(dist[u] * f < dist[v] for u, v, f in edges)


@dataclass(frozen=True)
class RankLowerBound:
    value: int
    method: str

    def to_json(self) -> dict:
        return {"value": self.value, "method": self.method}


def approx_rank_lower(M: ExactMatrix, eps=THIRD) -> RankLowerBound:
    """Best provable lower bound: 0/1 triviality, exact rank-1 infeasibility,
    or a Gershgorin certificate valid under every eps-perturbation."""
    eps = Fraction(eps)
    best = RankLowerBound(0, "trivial")
    if any(abs(Fraction(v)) > eps for v in M.entries):
        best = RankLowerBound(1, "nonzero-entry")
    if M.is_boolean() and best.value >= 1 and not rank1_feasible(M, eps):
        best = RankLowerBound(2, "rank1-infeasible")
    if M.rows == M.cols and M.rows > best.value:
        rows = M.to_rows()
        ok = True
        for i, row in enumerate(rows):
            diag = abs(Fraction(row[i])) - eps
            off = sum((abs(Fraction(v)) + eps for j, v in enumerate(row) if j != i), Fraction(0))
            if diag <= off:
                ok = False
                break
        if ok:
            best = RankLowerBound(M.rows, "gershgorin")
    return best


__all__ = ["ApproxRankWitness", "ApproxRankSearch", "approx_rank_search", "approx_rank_upper",
           "exact_max_dev", "rank1_feasible", "RankLowerBound", "approx_rank_lower"]
