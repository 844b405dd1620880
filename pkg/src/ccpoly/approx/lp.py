"""Pointwise approximation of Boolean functions by sparse multilinear polynomials.

Every decision is made in exact rational arithmetic.  A floating-point LP
(HiGHS dual simplex) only proposes candidates: a primal vertex, rebuilt
exactly from its active constraints, gives an upper bound on the best
achievable error, and the LP duals, projected exactly onto the vectors
orthogonal to every allowed monomial, give a lower bound.  When the two do
not separate from eps, an exact rational simplex settles the question.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from ..boolfn import BooleanFunction
from ..linalg import nullspace, solve_exact
from ..polynomial import MultilinearPoly, mobius_transform

THIRD = Fraction(1, 3)
MAX_LP_ARITY = 12
EXHAUSTIVE_MAX_N = 4
DEFAULT_BUDGET = 20000
_ACTIVE_TOL = 1e-7
_DUAL_TOL = 1e-9


@dataclass(frozen=True)
class ApproxPolynomial:
    poly: MultilinearPoly
    eps: Fraction
    verified: bool
    max_error: Fraction

    @property
    def support(self) -> list[int]:
        return self.poly.support()

    def to_json(self) -> dict:
        return {
            "n": self.poly.n,
            "eps": str(self.eps),
            "support": self.support,
            "terms": self.poly.to_json()["terms"],
            "max_error": str(self.max_error),
            "verified": self.verified,
        }


def max_error(g: BooleanFunction, poly: MultilinearPoly) -> Fraction:
    """max_x |g(x) - p(x)| in exact arithmetic."""
    vals = poly.evaluate_all()
    return max((abs(Fraction(v) - b) for v, b in zip(vals, g.table)), default=Fraction(0))


def verify_approx(g: BooleanFunction, poly: MultilinearPoly, eps) -> ApproxPolynomial:
    err = max_error(g, poly)
    eps = Fraction(eps)
    return ApproxPolynomial(poly, eps, err <= eps, err)


def _design(n: int, support: Sequence[int]) -> np.ndarray:
    xs = np.arange(1 << n)[:, None]
    masks = np.asarray(support, dtype=np.int64)[None, :]
    return ((xs & masks) == masks).astype(np.float64)


@dataclass
class MinimaxResult:
    """Best uniform error over polynomials with the given support, bracketed
    exactly: lower <= t* <= upper."""

    support: tuple[int, ...]
    lower: Fraction
    upper: Fraction
    poly: MultilinearPoly
    certificate: dict[int, Fraction] | None = field(default=None, repr=False)
    method: str = "highs+exact"

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _rationalize(v: float, limit: int) -> Fraction:
    return Fraction(v).limit_denominator(limit)


def _primal_candidates(g, support, A, a_f, t_f) -> list[list[Fraction]]:
    cands = []
    n = g.n
    resid = A @ a_f - np.asarray(g.table, dtype=float)
    active = [x for x in range(1 << n) if abs(abs(resid[x]) - t_f) <= _ACTIVE_TOL]
    if active:
        rows = []
        rhs = []
        for x in active:
            sign = 1 if resid[x] >= 0 else -1
            if t_f <= _ACTIVE_TOL:
                sign = 0
            rows.append([int(x & m == m) for m in support] + [-sign])
            rhs.append(g.table[x])
        sol = solve_exact(rows, rhs)
        if sol is not None:
            cands.append(sol[0][:-1])
    for limit in (10 ** 3, 10 ** 6, 10 ** 9):
        cands.append([_rationalize(float(v), limit) for v in a_f])
    return cands


def _dual_certificate(g, support, w_f) -> tuple[Fraction, dict[int, Fraction]] | None:
    """Exact w orthogonal to every support column; returns (|w.g| / |w|_1, w)."""
    P = [x for x in range(len(w_f)) if abs(w_f[x]) > _DUAL_TOL]
    if not P:
        return None
    cols = [[int(x & m == m) for x in P] for m in support]
    basis = nullspace(cols, ncols=len(P)) if cols else nullspace([], ncols=len(P))
    if not basis:
        return None
    wr = [Fraction(float(w_f[x])).limit_denominator(10 ** 9) for x in P]
    if len(basis) == 1:
        w = basis[0]
    else:
        # exact orthogonal projection of the rounded duals onto span(basis)
        k = len(basis)
        gram = [[sum(bi * bj for bi, bj in zip(basis[i], basis[j])) for j in range(k)] for i in range(k)]
        rhs = [sum(bi * wi for bi, wi in zip(basis[i], wr)) for i in range(k)]
        sol = solve_exact(gram, rhs)
        if sol is None:
            return None
        coef = sol[0]
        w = [sum(coef[i] * basis[i][j] for i in range(k)) for j in range(len(P))]
    norm = sum(abs(v) for v in w)
    if norm == 0:
        return None
    val = abs(sum(v * g.table[x] for v, x in zip(w, P))) / norm
    return val, {x: v / norm for x, v in zip(P, w) if v}


def _sympy_minimax(g: BooleanFunction, support: Sequence[int]) -> tuple[Fraction, list[Fraction]]:
    from sympy import Rational
    from sympy.solvers.simplex import linprog as exact_linprog

    k = len(support)
    A = []
    b = []
    for x in range(1 << g.n):
        row = [int(x & m == m) for m in support]
        A.append(row + [-1])
        b.append(g.table[x])
        A.append([-v for v in row] + [-1])
        b.append(-g.table[x])
    c = [0] * k + [1]
    bounds = [(None, None)] * k + [(0, None)]
    opt, arg = exact_linprog(c, A, b, bounds=bounds)
    to_frac = lambda v: Fraction(int(Rational(v).p), int(Rational(v).q))
    return to_frac(opt), [to_frac(v) for v in arg[:k]]


def minimax_fit(g: BooleanFunction, support: Iterable[int], exact: bool = False) -> MinimaxResult:
    """min over a (with the given support) of max_x |g(x) - p_a(x)|.

    The result brackets the optimum exactly; with ``exact`` the bracket is
    closed by an exact rational simplex when needed.
    """
    if g.n > MAX_LP_ARITY:
        raise ValueError(f"LP approximation supports n <= {MAX_LP_ARITY}")
    support = tuple(sorted(set(support)))
    full = (1 << g.n) - 1
    if any(m < 0 or m & ~full for m in support):
        raise ValueError("support mask outside the variable range")
    gv = np.asarray(g.table, dtype=float)
    if not support:
        zero = MultilinearPoly(g.n, {})
        err = max_error(g, zero)
        # w = e_x at a 1-point certifies the error of the empty polynomial
        cert = {g.table.index(1): Fraction(1)} if err else None
        return MinimaxResult(support, err, err, zero, cert, "trivial")
    A = _design(g.n, support)
    N, k = A.shape
    c = np.zeros(k + 1)
    c[-1] = 1.0
    ones = np.ones((N, 1))
    A_ub = np.vstack([np.hstack([A, -ones]), np.hstack([-A, -ones])])
    b_ub = np.concatenate([gv, -gv])
    bounds = [(None, None)] * k + [(0, None)]
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs-ds")
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    a_f = res.x[:k]
    t_f = float(res.x[-1])
    best_poly = None
    upper = None
    for cand in _primal_candidates(g, support, A, a_f, t_f):
        poly = MultilinearPoly(g.n, dict(zip(support, cand)))
        err = max_error(g, poly)
        if upper is None or err < upper:
            upper, best_poly = err, poly
    marg = res.ineqlin.marginals
    w_f = marg[:N] - marg[N:]
    dual = _dual_certificate(g, support, w_f)
    lower, cert = (dual if dual is not None else (Fraction(0), None))
    lower = min(lower, upper)
    out = MinimaxResult(support, lower, upper, best_poly, cert)
    if exact and not out.exact:
        t_star, a = _sympy_minimax(g, support)
        poly = MultilinearPoly(g.n, dict(zip(support, a)))
        err = max_error(g, poly)
        if err != t_star:
            raise RuntimeError("exact simplex returned an inconsistent optimum")
        out = MinimaxResult(support, t_star, t_star, poly, cert, "exact-simplex")
    return out


def approx_feasible(g: BooleanFunction, support: Iterable[int], eps=THIRD) -> ApproxPolynomial | None:
    """A verified eps-approximation with monomials in ``support``, or None when
    no such polynomial exists (proved by a dual certificate or exact simplex)."""
    eps = Fraction(eps)
    fit = minimax_fit(g, support)
    if fit.upper > eps and fit.lower <= eps:
        fit = minimax_fit(g, support, exact=True)
    if fit.upper <= eps:
        return verify_approx(g, fit.poly, eps)
    return None


def degree_support(n: int, d: int) -> list[int]:
    return [m for m in range(1 << n) if m.bit_count() <= d]


def approx_degree(g: BooleanFunction, eps=THIRD) -> tuple[int, ApproxPolynomial]:
    """Smallest d admitting an eps-approximation of degree <= d, with a witness."""
    for d in range(g.n + 1):
        p = approx_feasible(g, degree_support(g.n, d), eps)
        if p is not None:
            return d, p
    raise AssertionError("the exact polynomial always has degree <= n")


# ---------------------------------------------------------------------------
# sparsest approximation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialSearch:
    count: int
    polynomial: ApproxPolynomial
    exact: bool
    lp_solves: int

    def to_json(self) -> dict:
        return {"count": self.count, "exact": self.exact, "lp_solves": self.lp_solves,
                "polynomial": self.polynomial.to_json()}


def _orthogonal_masks(n: int, cert: dict[int, Fraction]) -> int:
    """Bitset of masks S whose column is orthogonal to cert: sum_{x >= S} w_x = 0."""
    up = [Fraction(0)] * (1 << n)
    for x, v in cert.items():
        up[x] = v
    for i in range(n):
        bit = 1 << i
        for x in range(1 << n):
            if not x & bit:
                up[x] += up[x | bit]
    out = 0
    for m, v in enumerate(up):
        if v == 0:
            out |= 1 << m
    return out


def _exhaustive_mon(g: BooleanFunction, eps: Fraction, budget: int) -> MonomialSearch:
    exact_poly = mobius_transform(g)
    cap = exact_poly.mon()
    if max_error(g, MultilinearPoly(g.n, {})) <= eps:
        return MonomialSearch(0, verify_approx(g, MultilinearPoly(g.n, {}), eps), True, 0)
    masks = sorted(range(1 << g.n), key=lambda m: (m.bit_count(), m))
    blocked: list[int] = []   # orthogonal-mask sets of infeasibility certificates
    solves = 0
    for k in range(1, cap):
        for combo in combinations(masks, k):
            smask = 0
            for m in combo:
                smask |= 1 << m
            if any(smask & b == smask for b in blocked):
                continue
            if solves >= budget:
                return MonomialSearch(cap, verify_approx(g, exact_poly, eps), False, solves)
            solves += 1
            fit = minimax_fit(g, combo)
            if fit.upper > eps and fit.lower <= eps:
                fit = minimax_fit(g, combo, exact=True)
            if fit.upper <= eps:
                return MonomialSearch(k, verify_approx(g, fit.poly, eps), True, solves)
            if fit.certificate is not None and fit.lower > eps:
                blocked.append(_orthogonal_masks(g.n, fit.certificate))
    return MonomialSearch(cap, verify_approx(g, exact_poly, eps), True, solves)


def _greedy_mon(g: BooleanFunction, eps: Fraction, budget: int) -> MonomialSearch:
    exact_poly = mobius_transform(g)
    N = 1 << g.n
    xs = np.arange(N)
    support: list[int] = []
    solves = 0
    found = None
    while solves < budget and len(support) < exact_poly.mon():
        fit = minimax_fit(g, support)
        solves += 1
        if fit.upper <= eps:
            found = list(support)
            break
        w = np.zeros(N)
        for x, v in (fit.certificate or {}).items():
            w[x] = float(v)
        if not w.any():
            w = np.asarray(g.table, float) - np.asarray(fit.poly.evaluate_all(), float)
        # correlation of every column with the dual weights
        corr = np.array([abs(w[(xs & m) == m].sum()) for m in range(N)])
        corr[support] = -1
        support.append(int(np.argmax(corr)))
    if found is None:
        return MonomialSearch(exact_poly.mon(), verify_approx(g, exact_poly, eps), False, solves)
    # backward pruning
    for m in sorted(found, key=lambda m: (-m.bit_count(), -m)):
        if solves >= budget:
            break
        trial = [s for s in found if s != m]
        solves += 1
        if approx_feasible(g, trial, eps) is not None:
            found = trial
    poly = approx_feasible(g, found, eps)
    if poly is None or len(found) >= exact_poly.mon():
        return MonomialSearch(exact_poly.mon(), verify_approx(g, exact_poly, eps), False, solves)
    return MonomialSearch(len(found), poly, False, solves)


def approx_mon_upper(g: BooleanFunction, eps=THIRD, budget: int = DEFAULT_BUDGET,
                     strategy: str = "auto") -> MonomialSearch:
    """Fewest monomials of an eps-approximation: exact by increasing-size
    support enumeration for n <= 4, otherwise a greedy upper bound.  The
    returned polynomial is always verified."""
    eps = Fraction(eps)
    if strategy == "auto":
        strategy = "exhaustive" if g.n <= EXHAUSTIVE_MAX_N else "greedy"
    if strategy == "exhaustive":
        return _exhaustive_mon(g, eps, budget)
    if strategy == "greedy":
        return _greedy_mon(g, eps, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


__all__ = [
    "ApproxPolynomial", "MinimaxResult", "MonomialSearch", "max_error", "verify_approx",
    "minimax_fit", "approx_feasible", "approx_degree", "approx_mon_upper", "degree_support",
]
