"""Degree and communication bounds derived from approximation quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .._bits import log2_exact
from ..polynomial import UnivariatePoly


def ehlich_zeller_bound(c, b1, b2, n) -> float:
    """deg(r) >= sqrt(c n / (c + b2 - b1)) for r bounded in [b1, b2] on 0..n
    with |r'| >= c somewhere in [0, n]."""
    c, b1, b2, n = Fraction(c), Fraction(b1), Fraction(b2), Fraction(n)
    if c <= 0:
        raise ValueError("c must be positive")
    if b2 < b1:
        raise ValueError("need b2 >= b1")
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.sqrt(c * n / (c + b2 - b1))


@dataclass(frozen=True)
class EZParams:
    c: Fraction
    b1: Fraction
    b2: Fraction
    n: int

    def bound(self) -> float:
        return ehlich_zeller_bound(self.c, self.b1, self.b2, self.n)


def measure_ez_params(r: UnivariatePoly, n: int) -> EZParams | None:
    """b1, b2 = min/max of r on 0..n; c = largest |r(i+1) - r(i)|, which the
    derivative attains somewhere in [i, i+1].  None if r is constant there."""
    vals = [r(i) for i in range(n + 1)]
    c = max((abs(vals[i + 1] - vals[i]) for i in range(n)), default=Fraction(0))
    if c == 0:
        return None
    return EZParams(c, min(vals), max(vals), n)


@dataclass(frozen=True)
class Q2Bound:
    value: float
    exact: Fraction | None
    flag: str        # exact | witnessed | conditional
    assumption: str | None = None

    def to_json(self) -> dict:
        out = {"value": round(self.value, 9), "exact": None if self.exact is None else str(self.exact),
               "flag": self.flag}
        if self.assumption:
            out["assumption"] = self.assumption
        return out


def q2_lower_bound(m_tilde_lower, flag: str = "exact", assumption: str | None = None) -> Q2Bound:
    """Bounded-error qubit cost >= log2(m~) / 2, carrying the input's provenance."""
    m = Fraction(m_tilde_lower) if not isinstance(m_tilde_lower, float) else m_tilde_lower
    if m < 1:
        raise ValueError("an approximate decomposition number is at least 1")
    if flag not in ("exact", "witnessed", "conditional"):
        raise ValueError(f"unknown flag {flag!r}")
    if flag == "conditional" and not assumption:
        raise ValueError("conditional bounds must name their assumption")
    if isinstance(m, Fraction) and m.denominator == 1:
        lg = log2_exact(int(m))
        if isinstance(lg, Fraction):
            return Q2Bound(float(lg / 2), lg / 2, flag, assumption)
    return Q2Bound(math.log2(m) / 2, None, flag, assumption)


__all__ = ["ehlich_zeller_bound", "EZParams", "measure_ez_params", "Q2Bound", "q2_lower_bound"]
