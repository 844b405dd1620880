"""Exact multilinear polynomials over subset-indexed monomials.

A monomial X_S is keyed by the bitmask of S (bit i-1 for variable x_i).  For
two-party polynomials on 2n variables the x-variables occupy the low n bits
and the y-variables the high n bits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

import numpy as np

from .boolfn import BooleanFunction

Number = int | Fraction


def _norm(c) -> Number:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


@dataclass(frozen=True)
class MultilinearPoly:
    n: int
    coeffs: Mapping[int, Number] = field(default_factory=dict)

    def __post_init__(self):
        full = (1 << self.n) - 1
        clean = {}
        for mask, c in self.coeffs.items():
            if mask < 0 or mask & ~full:
                raise ValueError(f"monomial mask {mask:#x} exceeds {self.n} variables")
            c = _norm(c)
            if c != 0:
                clean[int(mask)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    # -- basic queries --------------------------------------------------
    def mon(self) -> int:
        return len(self.coeffs)

    def degree(self) -> int:
        return max((m.bit_count() for m in self.coeffs), default=0)

    def support(self) -> list[int]:
        return list(self.coeffs)

    def evaluate(self, x: int) -> Number:
        return _norm(sum((c for m, c in self.coeffs.items() if x & m == m), Fraction(0)))

    def evaluate_all(self) -> list[Number]:
        """Values on every input, via the subset-sum transform."""
        vals: list[Number] = [0] * (1 << self.n)
        for m, c in self.coeffs.items():
            vals[m] = c
        for i in range(self.n):
            bit = 1 << i
            for x in range(1 << self.n):
                if x & bit:
                    vals[x] = vals[x] + vals[x ^ bit]
        return [_norm(v) for v in vals]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return MultilinearPoly(self.n, out)

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.n, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        out: dict[int, Number] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = m1 | m2
                out[m] = out.get(m, 0) + c1 * c2
        return MultilinearPoly(self.n, out)

    def restrict(self, assignment: Mapping[int, int]) -> "MultilinearPoly":
        """Fix variables (1-based) to constants; free variables are renumbered in order."""
        fixed = 0
        ones = 0
        for var, b in assignment.items():
            if not 1 <= var <= self.n:
                raise ValueError(f"variable index {var} outside 1..{self.n}")
            fixed |= 1 << (var - 1)
            if b:
                ones |= 1 << (var - 1)
        free = [i for i in range(self.n) if not fixed >> i & 1]
        out: dict[int, Number] = {}
        for m, c in self.coeffs.items():
            if m & fixed & ~ones:
                continue
            new = 0
            for j, i in enumerate(free):
                if m >> i & 1:
                    new |= 1 << j
            out[new] = out.get(new, 0) + c
        return MultilinearPoly(len(free), out)

    # -- serialization --------------------------------------------------
    def to_text(self, two_party: bool = False) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c} * {monomial_name(m, self.n, two_party)}"
                          for m, c in self.coeffs.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"mask": m, "num": Fraction(c).numerator, "den": Fraction(c).denominator}
                      for m, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultilinearPoly":
        return cls(int(data["n"]), {int(t["mask"]): Fraction(int(t["num"]), int(t["den"]))
                                    for t in data["terms"]})

    @classmethod
    def from_text(cls, text: str, n: int, two_party: bool = False) -> "MultilinearPoly":
        text = text.strip()
        if text == "0":
            return cls(n, {})
        out: dict[int, Number] = {}
        for term in text.split(" + "):
            coef, _, mono = term.partition(" * ")
            mask = parse_monomial(mono.strip(), n, two_party)
            out[mask] = out.get(mask, 0) + Fraction(coef.strip())
        return cls(n, out)


def monomial_name(mask: int, n: int, two_party: bool = False) -> str:
    if mask == 0:
        return "1"
    if not two_party:
        return "".join(f"x{i + 1}" for i in range(n) if mask >> i & 1)
    half = n // 2
    xs = "".join(f"x{i + 1}" for i in range(half) if mask >> i & 1)
    ys = "".join(f"y{i + 1}" for i in range(half) if mask >> (half + i) & 1)
    return xs + ys


_VAR_RE = re.compile(r"([xy])(\d+)")


def parse_monomial(name: str, n: int, two_party: bool = False) -> int:
    if name == "1":
        return 0
    mask = 0
    pos = 0
    half = n // 2 if two_party else n
    for m in _VAR_RE.finditer(name):
        if m.start() != pos:
            raise ValueError(f"bad monomial {name!r}")
        pos = m.end()
        i = int(m.group(2))
        if not 1 <= i <= half:
            raise ValueError(f"variable {m.group(0)} out of range")
        if m.group(1) == "y":
            if not two_party:
                raise ValueError("y-variable in a one-party polynomial")
            i += half
        mask |= 1 << (i - 1)
    if pos != len(name):
        raise ValueError(f"bad monomial {name!r}")
    return mask


@dataclass(frozen=True)
class UnivariatePoly:
    """r(k) = sum_j coeffs[j] * k**j with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(j * c for j, c in enumerate(self.coeffs) if j))

    @classmethod
    def interpolate(cls, points: Iterable[tuple[int, Fraction]]) -> "UnivariatePoly":
        """Exact Lagrange interpolation through (k, value) pairs."""
        pts = [(Fraction(k), Fraction(v)) for k, v in points]
        total = [Fraction(0)] * len(pts)
        for i, (ki, vi) in enumerate(pts):
            if vi == 0:
                continue
            basis = [Fraction(1)]
            denom = Fraction(1)
            for j, (kj, _) in enumerate(pts):
                if j == i:
                    continue
                basis = [Fraction(0)] + basis
                for d in range(len(basis) - 1):
                    basis[d] -= kj * basis[d + 1]
                denom *= ki - kj
            scale = vi / denom
            for d, c in enumerate(basis):
                total[d] += scale * c
        return cls(tuple(total))


def mobius_transform(g: BooleanFunction) -> MultilinearPoly:
    """The unique multilinear polynomial agreeing with g on {0,1}^n."""
    a = np.array(g.table, dtype=np.int64)
    for i in range(g.n):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    nz = np.flatnonzero(a)
    return MultilinearPoly(g.n, {int(m): int(a[m]) for m in nz})


def mon_count(p: MultilinearPoly) -> int:
    return p.mon()


def degree(p: MultilinearPoly) -> int:
    return p.degree()


# each variable z_i becomes a polynomial in (x_i, y_i): masks 1=x, 2=y, 3=xy
_COMPOSITIONS = {
    "and": {3: 1},
    "or": {1: 1, 2: 1, 3: -1},
    "xor": {1: 1, 2: 1, 3: -2},
}


def two_party_poly(p: MultilinearPoly, composition: str = "and") -> MultilinearPoly:
    """Polynomial of f(x, y) = g(x o y) on 2n variables (x low bits, y high bits)."""
    key = composition.lower()
    if key not in _COMPOSITIONS:
        raise ValueError(f"unsupported composition {composition!r}")
    local = _COMPOSITIONS[key]
    n = p.n
    out: dict[int, Number] = {}
    for mask, c in p.coeffs.items():
        terms: dict[int, Number] = {0: c}
        for i in range(n):
            if not mask >> i & 1:
                continue
            nxt: dict[int, Number] = {}
            for m, a in terms.items():
                for lm, lc in local.items():
                    mm = m | (1 << i if lm & 1 else 0) | (1 << (n + i) if lm & 2 else 0)
                    nxt[mm] = nxt.get(mm, 0) + a * lc
            terms = nxt
        for m, a in terms.items():
            out[m] = out.get(m, 0) + a
    return MultilinearPoly(2 * n, out)


def is_even(p: MultilinearPoly) -> bool:
    """Every monomial contains x_i iff it contains y_i."""
    if p.n % 2:
        raise ValueError("two-party polynomial needs an even number of variables")
    half = p.n // 2
    low = (1 << half) - 1
    return all(m & low == m >> half for m in p.coeffs)


def symmetrize(p: MultilinearPoly) -> UnivariatePoly:
    """Univariate r with r(k) = average of p over the inputs of weight k."""
    n = p.n
    by_degree = [Fraction(0)] * (n + 1)
    for m, c in p.coeffs.items():
        by_degree[m.bit_count()] += c
    # sum over |x| = k of X_S(x) is C(n-d, k-d) for |S| = d
    values = []
    for k in range(n + 1):
        total = sum((by_degree[d] * comb(n - d, k - d) for d in range(k + 1)), Fraction(0))
        values.append((k, total / comb(n, k)))
    return UnivariatePoly.interpolate(values)
