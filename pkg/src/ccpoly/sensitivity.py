"""0-block sensitivity, high-degree monomial hypergraphs and blocking sets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from ._bits import bits_of
from .boolfn import BooleanFunction, SymmetricProfile, is_symmetric
from .polynomial import MultilinearPoly, mobius_transform

EXACT_SO_MAX_N = 12
THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class ZeroBlockWitness:
    """Input x with disjoint zero-blocks S_i, each of whose flips changes g.

    Blocks are stored as sorted tuples of 1-based variable indices.
    """

    n: int
    x: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def b(self) -> int:
        return len(self.blocks)

    def is_valid(self, g: BooleanFunction) -> bool:
        seen = 0
        base = g.table[self.x]
        for block in self.blocks:
            mask = sum(1 << (i - 1) for i in block)
            if not mask or mask & seen or mask & self.x:
                return False
            if g.table[self.x | mask] == base:
                return False
            seen |= mask
        return True

    def to_json(self) -> dict:
        # x written x_1 first
        return {"x": "".join(str(self.x >> i & 1) for i in range(self.n)),
                "blocks": [list(b) for b in self.blocks]}


def _deposit(zero_positions: list[int], size: int) -> np.ndarray:
    """Map compact subset index s in [0, 2^k) to the mask over the given positions."""
    out = np.zeros(size, dtype=np.int64)
    for j, p in enumerate(zero_positions):
        out[np.arange(size) >> j & 1 == 1] |= 1 << p
    return out


def minimal_sensitive_blocks(g: BooleanFunction, x: int) -> list[int]:
    """Inclusion-minimal masks B of zero positions of x with g(x | B) != g(x)."""
    zeros = [i for i in range(g.n) if not x >> i & 1]
    k = len(zeros)
    size = 1 << k
    masks = _deposit(zeros, size)
    table = np.asarray(g.table, dtype=np.int8)
    sens = table[x | masks] != table[x]
    sens[0] = False
    # has[S]: some subset of S is sensitive
    has = sens.copy()
    for j in range(k):
        view = has.reshape(-1, 2, 1 << j)
        view[:, 1, :] |= view[:, 0, :]
    below = np.zeros(size, dtype=bool)
    idx = np.arange(size)
    for j in range(k):
        on = (idx >> j & 1) == 1
        below[on] |= has[idx[on] ^ (1 << j)]
    minimal = np.flatnonzero(sens & ~below)
    return sorted((int(masks[s]) for s in minimal), key=lambda m: (m.bit_count(), m))


def _max_packing(blocks: list[int], stop_at: int) -> list[int]:
    """Largest family of pairwise disjoint masks (branch and bound)."""
    best: list[int] = []
    if not blocks:
        return best
    min_size = min(b.bit_count() for b in blocks)

    def rec(avail: list[int], chosen: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= stop_at or not avail:
            return
        universe = 0
        for b in avail:
            universe |= b
        if len(chosen) + universe.bit_count() // min_size <= len(best):
            return
        e = universe & -universe
        with_e = [b for b in avail if b & e]
        without = [b for b in avail if not b & e]
        for b in with_e:
            chosen.append(b)
            rec([c for c in without if not c & b], chosen)
            chosen.pop()
        rec(without, chosen)

    rec(blocks, [])
    return best


def _witness(n: int, x: int, masks: Iterable[int]) -> ZeroBlockWitness:
    blocks = tuple(sorted(tuple(i + 1 for i in bits_of(m)) for m in masks))
    return ZeroBlockWitness(n, x, blocks)


def _so_exact(g: BooleanFunction) -> tuple[int, ZeroBlockWitness]:
    if g.n > EXACT_SO_MAX_N:
        raise ValueError(f"exact so search supports n <= {EXACT_SO_MAX_N}")
    best = 0
    best_w = ZeroBlockWitness(g.n, 0, ())
    # inputs with many zeros first: they admit the most blocks
    order = sorted(range(1 << g.n), key=lambda x: (x.bit_count(), x))
    for x in order:
        if g.n - x.bit_count() <= best:
            break
        blocks = minimal_sensitive_blocks(g, x)
        if not blocks:
            continue
        union = 0
        for b in blocks:
            union |= b
        if union.bit_count() <= best:
            continue
        packing = _max_packing(blocks, stop_at=g.n - x.bit_count())
        if len(packing) > best:
            best = len(packing)
            best_w = _witness(g.n, x, packing)
    return best, best_w


def _smallest_block(g: BooleanFunction, x: int, avail: int, depth: int = 2) -> int | None:
    base = g.table[x]
    pos = bits_of(avail)
    for size in range(1, min(depth, len(pos)) + 1):
        for combo in combinations(pos, size):
            m = sum(1 << i for i in combo)
            if g.table[x | m] != base:
                return m
    if g.table[x | avail] == base:
        return None
    # shrink the whole remainder to a minimal block
    m = avail
    for i in pos:
        if g.table[x | (m & ~(1 << i))] != base:
            m &= ~(1 << i)
    return m


def _so_greedy(g: BooleanFunction) -> tuple[int, ZeroBlockWitness]:
    best = 0
    best_w = ZeroBlockWitness(g.n, 0, ())
    full = (1 << g.n) - 1
    for x in sorted(range(1 << g.n), key=lambda x: (x.bit_count(), x)):
        if g.n - x.bit_count() <= best:
            break
        avail = full & ~x
        chosen = []
        while avail:
            m = _smallest_block(g, x, avail)
            if m is None:
                break
            chosen.append(m)
            avail &= ~m
        if len(chosen) > best:
            best = len(chosen)
            best_w = _witness(g.n, x, chosen)
    return best, best_w


def so_symmetric(profile: SymmetricProfile) -> tuple[int, int]:
    """so from the weight profile alone: returns (so, weight attaining it).

    At weight w every block of size k moves the input to weight w + k; with k
    the smallest size changing the value, floor((n - w) / k) blocks fit.
    """
    v = profile.values
    n = profile.n
    best, arg = 0, 0
    for w in range(n + 1):
        k = next((k for k in range(1, n - w + 1) if v[w + k] != v[w]), None)
        if k is None:
            continue
        count = (n - w) // k
        if count > best:
            best, arg = count, w
    return best, arg


def _symmetric_witness(profile: SymmetricProfile) -> tuple[int, ZeroBlockWitness]:
    so, w = so_symmetric(profile)
    n = profile.n
    if so == 0:
        return 0, ZeroBlockWitness(n, 0, ())
    k = (n - w) // so
    x = (1 << w) - 1
    blocks = tuple(tuple(range(w + 1 + j * k, w + 1 + (j + 1) * k)) for j in range(so))
    return so, ZeroBlockWitness(n, x, blocks)


@dataclass(frozen=True)
class SoResult:
    so: int
    witness: ZeroBlockWitness
    exact: bool

    def __iter__(self):
        return iter((self.so, self.witness))

    def to_json(self) -> dict:
        return {"so": self.so, "flag": "exact" if self.exact else "witnessed",
                "witness": self.witness.to_json()}


def zero_block_sensitivity(g: BooleanFunction | SymmetricProfile, mode: str = "exact") -> SoResult:
    """so(g) = max_x so_x(g).  ``exact`` searches all x (n <= 12, or any n for a
    symmetric profile); ``greedy`` returns a witnessed lower bound."""
    if isinstance(g, SymmetricProfile):
        so, w = _symmetric_witness(g)
        return SoResult(so, w, True)
    if mode == "exact":
        prof = is_symmetric(g)
        if prof is not None:
            so, w = _symmetric_witness(prof)
            return SoResult(so, w, True)
        so, w = _so_exact(g)
        return SoResult(so, w, True)
    if mode == "greedy":
        so, w = _so_greedy(g)
        return SoResult(so, w, False)
    raise ValueError(f"unknown mode {mode!r}")


def symmetric_mon(profile: SymmetricProfile) -> int:
    """mon(g) for symmetric g: each weight-d monomial has coefficient
    sum_k (-1)^(d-k) C(d, k) v_k."""
    v = profile.values
    total = 0
    for d in range(profile.n + 1):
        c = sum((-1) ** (d - k) * comb(d, k) * v[k] for k in range(d + 1))
        if c:
            total += comb(profile.n, d)
    return total


def verify_mon_le_so_bound(g: BooleanFunction | SymmetricProfile) -> bool:
    """mon(g) <= n^(2 so(g)) for symmetric g."""
    prof = g if isinstance(g, SymmetricProfile) else is_symmetric(g)
    if prof is None:
        raise ValueError("g is not symmetric")
    so, _ = so_symmetric(prof)
    mon = symmetric_mon(prof) if isinstance(g, SymmetricProfile) else mobius_transform(g).mon()
    return mon <= prof.n ** (2 * so)


# ---------------------------------------------------------------------------
# hypergraphs and blocking sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        for e in self.edges:
            if any(not 1 <= i <= self.n for i in e):
                raise ValueError(f"edge {sorted(e)} leaves the universe 1..{self.n}")

    def is_s_hypergraph(self, s: int) -> bool:
        return all(len(e) >= s for e in self.edges)

    def is_blocked_by(self, S: Iterable[int]) -> bool:
        S = set(S)
        return all(e & S for e in self.edges)

    def to_text(self) -> str:
        return "".join(" ".join(map(str, sorted(e))) + "\n" for e in self.edges)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "Hypergraph":
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            edges.append(frozenset(int(tok) for tok in line.split()))
        if n is None:
            n = max((max(e) for e in edges if e), default=0)
        return cls(n, tuple(edges))


def high_degree_hypergraph(p: MultilinearPoly, s: int) -> Hypergraph:
    edges = tuple(frozenset(i + 1 for i in bits_of(m)) for m in p.support() if m.bit_count() >= s)
    return Hypergraph(p.n, edges)


@dataclass(frozen=True)
class BlockingSetResult:
    blocker: frozenset[int] | None
    conclusive: bool

    @property
    def found(self) -> bool:
        return self.blocker is not None

    def to_json(self) -> dict:
        return {"blocker": None if self.blocker is None else sorted(self.blocker),
                "conclusive": self.conclusive}


def _exact_blocker(edges: list[int], max_size: int) -> int | None:
    def rec(chosen: int, k: int) -> int | None:
        e = next((e for e in edges if not e & chosen), None)
        if e is None:
            return chosen
        if k == 0:
            return None
        for i in bits_of(e):
            out = rec(chosen | (1 << i), k - 1)
            if out is not None:
                return out
        return None

    for k in range(max_size + 1):
        found = rec(0, k)
        if found is not None:
            return found
    return None


def blocking_set(H: Hypergraph, max_size: int, mode: str = "exact", seed: int = 0,
                 budget: int | None = None) -> BlockingSetResult:
    """Hitting set of size <= max_size.

    ``exact``: minimum hitting set by iterative deepening (ties go to the
    smallest elements); absence is a proof.  ``randomized``: uniform random
    subsets of size min(floor(n/2), max_size), 64 * 2^s tries by default;
    absence is inconclusive.
    """
    masks = [sum(1 << (i - 1) for i in e) for e in H.edges]
    if any(m == 0 for m in masks):
        return BlockingSetResult(None, True)
    if not masks:
        return BlockingSetResult(frozenset(), True)
    if mode == "exact":
        found = _exact_blocker(masks, max_size)
        if found is None:
            return BlockingSetResult(None, True)
        return BlockingSetResult(frozenset(i + 1 for i in bits_of(found)), True)
    if mode == "randomized":
        size = min(H.n // 2, max_size)
        s = min(m.bit_count() for m in masks)
        tries = budget if budget is not None else min(64 * 2 ** s, 1 << 20)
        rng = np.random.default_rng(seed)
        for _ in range(tries):
            pick = rng.choice(H.n, size=size, replace=False)
            m = sum(1 << int(i) for i in pick)
            if all(e & m for e in masks):
                return BlockingSetResult(frozenset(int(i) + 1 for i in pick), True)
        return BlockingSetResult(None, False)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# approximate-monomial lower bound from so
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SoMonomialBound:
    so: int
    exponent: float          # sqrt(so / 12)
    value: float             # 2 ** exponent
    flag: str                # exact | witnessed

    @property
    def exact_value(self) -> Fraction | None:
        """2^sqrt(so/12) as a rational when the exponent is an integer."""
        r = math.isqrt(self.so // 12) if self.so % 12 == 0 else None
        if r is not None and r * r * 12 == self.so:
            return Fraction(2) ** r
        return None

    def to_json(self) -> dict:
        return {"so": self.so, "exponent": round(self.exponent, 9),
                "value": round(self.value, 9), "flag": self.flag}


def so_monomial_lower_bound(g: BooleanFunction | SymmetricProfile, eps: Fraction = THIRD,
                         mode: str = "auto") -> SoMonomialBound:
    """Lower bound 2^sqrt(so(g)/12) on the number of monomials of any
    1/3-approximating polynomial.  The constant 12 belongs to eps = 1/3.

    A witnessed (lower) so still gives a valid, weaker bound.
    """
    if Fraction(eps) != THIRD:
        raise ValueError("the so-based bound is stated for eps = 1/3 only")
    if isinstance(g, SymmetricProfile):
        res = zero_block_sensitivity(g)
    elif mode == "auto":
        exact_ok = g.n <= EXACT_SO_MAX_N or is_symmetric(g) is not None
        res = zero_block_sensitivity(g, "exact" if exact_ok else "greedy")
    else:
        res = zero_block_sensitivity(g, mode)
    exponent = math.sqrt(res.so / 12)
    return SoMonomialBound(res.so, exponent, 2.0 ** exponent, "exact" if res.exact else "witnessed")


__all__ = [
    "ZeroBlockWitness", "SoResult", "minimal_sensitive_blocks", "zero_block_sensitivity",
    "so_symmetric", "symmetric_mon", "verify_mon_le_so_bound", "Hypergraph",
    "high_degree_hypergraph", "BlockingSetResult", "blocking_set", "SoMonomialBound",
    "so_monomial_lower_bound",
]
