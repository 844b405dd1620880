"""Named verification suites and experiments."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Callable

import numpy as np

from .._bits import ceil_log2
from ..approx.lp import approx_mon_upper
from ..boolfn import BooleanFunction, SymmetricProfile, is_monotone, named_family
from ..comm import (
    and_power, build_problem, comm_rank, disj_value, eq_to_disj, eq_value, d_one_round,
    lovasz_saks_protocol, min_cover, raw_problem, verify_rank_eq_mon,
)
from ..linalg import (
    ExactMatrix, gershgorin_full_rank_check, random_boolean_matrix, rank_exact,
    singular_fraction_experiment,
)
from ..polynomial import mobius_transform
from ..sensitivity import so_symmetric, symmetric_mon, so_monomial_lower_bound, verify_mon_le_so_bound


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def fail(self, **info) -> None:
        self.counterexamples.append(info)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "instances": self.instances,
                "counterexamples": self.counterexamples, "details": self.details}


def _suite_rank_eq_mon(max_n: int = 4, **_) -> SuiteReport:
    rep = SuiteReport("rank-eq-mon")
    per_n = {}
    for n in range(1, max_n + 1):
        r = verify_rank_eq_mon(n)
        rep.instances += r.checked
        per_n[n] = r.checked
        for bad in r.counterexamples:
            rep.fail(n=n, **bad)
    rep.details["functions_per_n"] = per_n
    return rep


def symmetric_profiles(n: int):
    for bits in range(1 << (n + 1)):
        yield SymmetricProfile.from_values((bits >> k) & 1 for k in range(n + 1))


def _layer_degrees(prof: SymmetricProfile) -> list[int]:
    """Degrees d whose (shared) monomial coefficient is nonzero."""
    v = prof.values
    return [d for d in range(prof.n + 1)
            if sum((-1) ** (d - k) * comb(d, k) * v[k] for k in range(d + 1))]


def _suite_symmetric_monomials(max_n: int = 10, **_) -> SuiteReport:
    """Symmetric g with g(0) = 0 and lowest 1-weight t:
    upper  mon(g) <= sum_{i>=t} C(n,i), with no monomial of degree < t;
    t > n/2:  all C(n,t) degree-t monomials, and (n-t+1) mon(g) >= sum;
    t <= n/2: some present degree d >= n/2, so mon(g) >= C(n,d)."""
    rep = SuiteReport("symmetric-monomials")
    longest_gap = 0
    for n in range(1, max_n + 1):
        for prof in symmetric_profiles(n):
            if prof.values[0] != 0 or prof.t is None:
                continue
            rep.instances += 1
            t = prof.t
            degs = _layer_degrees(prof)
            mon = sum(comb(n, d) for d in degs)
            total = sum(comb(n, i) for i in range(t, n + 1))
            if mon > total or min(degs) < t:
                rep.fail(n=n, values=list(prof.values), reason="upper bound")
            if 2 * t > n:
                if t not in degs or (n - t + 1) * mon < total:
                    rep.fail(n=n, values=list(prof.values), reason="t > n/2 case")
            else:
                high = [d for d in degs if 2 * d >= n]
                if not high or mon < comb(n, high[0]):
                    rep.fail(n=n, values=list(prof.values), reason="t <= n/2 case")
            # longest run of absent degrees inside [t, n]
            present = set(degs)
            run = best = 0
            for d in range(t, n + 1):
                run = 0 if d in present else run + 1
                best = max(best, run)
            longest_gap = max(longest_gap, best)
    rep.details["longest_degree_gap"] = longest_gap
    return rep


def _suite_mon_so_bound(max_n: int = 10, min_n: int = 2, **_) -> SuiteReport:
    """mon(g) <= n^(2 so(g)) over all symmetric profiles.  At n = 1 the right
    side is always 1 and g = NOT x (mon 2) breaks it, so n starts at 2."""
    rep = SuiteReport("mon-so-bound")
    for n in range(min_n, max_n + 1):
        for prof in symmetric_profiles(n):
            rep.instances += 1
            if not verify_mon_le_so_bound(prof):
                rep.fail(n=n, values=list(prof.values), mon=symmetric_mon(prof),
                         so=so_symmetric(prof)[0])
    # the closed forms against truth tables at small n
    for n in range(1, 7):
        for prof in symmetric_profiles(n):
            g = prof.to_function()
            if mobius_transform(g).mon() != symmetric_mon(prof):
                rep.fail(n=n, values=list(prof.values), reason="symmetric mon formula")
    return rep


def monotone_functions(n: int):
    for code in range(1 << (1 << n)):
        g = BooleanFunction.from_int(n, code)
        if is_monotone(g):
            yield g


def _suite_lovasz_saks(max_n: int = 3, **_) -> SuiteReport:
    rep = SuiteReport("lovasz-saks")
    worst_ratio = Fraction(0)
    for n in range(1, max_n + 1):
        for g in monotone_functions(n):
            p = build_problem(g, "and")
            if g.is_constant():
                continue
            cover = min_cover(p, 1)
            proto = lovasz_saks_protocol(p, cover)
            rep.instances += 1
            cost, wrong = proto.sweep()
            bound = (1 + ceil_log2(len(cover) + 1)) * (2 + ceil_log2(comm_rank(p)))
            if wrong or cost > bound:
                rep.fail(n=n, table=g.to_int(), wrong=len(wrong), cost=cost, bound=bound)
            worst_ratio = max(worst_ratio, Fraction(cost, bound))
    rep.details["max_cost_over_bound"] = str(worst_ratio)
    return rep


def _suite_kronecker(trials: int = 20, max_m: int = 3, seed: int = 0, **_) -> SuiteReport:
    rep = SuiteReport("kronecker-rank")
    base = [("DISJ1", build_problem(named_family("nor", 1), "and")),
            ("EQ1", raw_problem(ExactMatrix.identity(2)))]
    for t in range(trials):
        base.append((f"random{t}", raw_problem(random_boolean_matrix(4, [seed, t]))))
    for name, p in base:
        r = comm_rank(p)
        for m in range(1, max_m + 1):
            rep.instances += 1
            rm = comm_rank(and_power(p, m))
            if rm != r ** m:
                rep.fail(problem=name, m=m, rank=rm, expected=r ** m)
    return rep


def _suite_gershgorin(trials: int = 1000, seed: int = 0, ns=(2, 3, 4), **_) -> SuiteReport:
    """Random entrywise perturbations of I with |delta| < 2^-n: certified full
    rank, and confirmed by exact rank."""
    rep = SuiteReport("gershgorin")
    certified = 0
    for n in ns:
        d = 1 << n
        rng = np.random.default_rng([seed, n])
        for t in range(trials):
            # eps drawn strictly below 2^-n; deltas uniform in [-eps, eps] on a 2^-40 grid
            eps = Fraction(int(rng.integers(1, 1 << 20)), 1 << 20) / d
            grid = 1 << 40
            scale = int(eps * grid)
            deltas = rng.integers(-scale, scale + 1, size=(d, d))
            entries = [Fraction(int(i == j)) + Fraction(int(deltas[i, j]), grid)
                       for i in range(d) for j in range(d)]
            M = ExactMatrix(d, d, tuple(entries))
            rep.instances += 1
            cert = gershgorin_full_rank_check(M, eps)
            if not cert:
                rep.fail(n=n, trial=t, reason="not certified")
                continue
            certified += 1
            if rank_exact(M) != d:
                rep.fail(n=n, trial=t, reason="certified but singular")
    rep.details["certified"] = certified
    return rep


def _suite_eq_to_disj(max_n: int = 2, **_) -> SuiteReport:
    rep = SuiteReport("eq-to-disj")
    for n in range(1, max_n + 1):
        for x in product((0, 1), repeat=n):
            for y in product((0, 1), repeat=n):
                rep.instances += 1
                xs, ys = eq_to_disj(x, y)
                if eq_value(x, y) != disj_value(xs, ys):
                    rep.fail(x=list(x), y=list(y))
    return rep


def canonical_under_permutation(g: BooleanFunction) -> int:
    from itertools import permutations
    return min(g.permute(perm).to_int() for perm in permutations(range(g.n)))


def _suite_approx_monomials_so(max_n: int = 3, **_) -> SuiteReport:
    """Exact m~on (exhaustive supports) against 2^sqrt(so/12), all g with n <= max_n.

    Both sides are invariant under renaming variables, so each permutation
    class is solved once.
    """
    rep = SuiteReport("approx-monomials-so")
    cache: dict[tuple[int, int], tuple[int, bool]] = {}
    for n in range(1, max_n + 1):
        for code in range(1 << (1 << n)):
            g = BooleanFunction.from_int(n, code)
            key = (n, canonical_under_permutation(g))
            if key not in cache:
                res = approx_mon_upper(g)
                cache[key] = (res.count, res.exact)
            count, exact = cache[key]
            bound = so_monomial_lower_bound(g)
            rep.instances += 1
            if not exact or count < bound.value:
                rep.fail(n=n, table=list(g.table), mon_tilde=count, so=bound.so,
                         bound=round(bound.value, 9), exact=exact)
    rep.details["permutation_classes"] = len(cache)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "rank-eq-mon": _suite_rank_eq_mon,
    "symmetric-monomials": _suite_symmetric_monomials,
    "mon-so-bound": _suite_mon_so_bound,
    "lovasz-saks": _suite_lovasz_saks,
    "kronecker-rank": _suite_kronecker,
    "gershgorin": _suite_gershgorin,
    "eq-to-disj": _suite_eq_to_disj,
    "approx-monomials-so": _suite_approx_monomials_so,
}


def verify_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**params)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def _exp_komlos(dims=(4, 8, 12), trials: int = 10000, seed: int = 0, **_) -> list[dict]:
    return singular_fraction_experiment(dims, trials, seed)


def _exp_andor(ns=(4, 9, 16), **_) -> list[dict]:
    rows = []
    for n in ns:
        k = int(round(n ** 0.5))
        formula = (2 ** k - 1) ** k
        mon = mobius_transform(named_family("andor", n)).mon()
        rows.append({"n": n, "fanout": k, "mon": mon, "formula": formula, "match": mon == formula})
    return rows


def _exp_symmetric_oneround(ns=tuple(range(2, 9)), **_) -> list[dict]:
    rows = []
    for n in ns:
        for t in range(1, n + 1):
            count = sum(comb(n, i) for i in range(t, n + 1)) + 1
            formula = ceil_log2(count) + 1
            p = build_problem(named_family("thr", n, t=t), "and")
            measured = d_one_round(p)
            rows.append({"n": n, "t": t, "rows_formula": count,
                         "formula_bits": formula, "formula_real": round(float(np.log2(count)) + 1, 9),
                         "d_one_round": measured, "match": formula == measured})
    return rows


EXPERIMENTS: dict[str, Callable[..., list[dict]]] = {
    "komlos": _exp_komlos,
    "andor-monomials": _exp_andor,
    "symmetric-oneround": _exp_symmetric_oneround,
}


def run_experiment(name: str, seed: int = 0, **params) -> list[dict]:
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; choose from {', '.join(EXPERIMENTS)}")
    return EXPERIMENTS[name](seed=seed, **params)


__all__ = ["SuiteReport", "SUITES", "verify_suite", "EXPERIMENTS", "run_experiment",
           "symmetric_profiles", "monotone_functions", "canonical_under_permutation"]
