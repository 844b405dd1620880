"""Low-degree approximation of OR_n from a shifted and scaled Chebyshev polynomial."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..boolfn import named_family
from ..polynomial import MultilinearPoly, UnivariatePoly
from .lp import THIRD, ApproxPolynomial, verify_approx

# documented degree constant: deg <= ceil(C_DEGREE * sqrt(n)) for eps = 1/3
C_DEGREE = Fraction(5, 4)
FULL_CHECK_MAX_N = 12
EXPAND_MAX_N = 16


def chebyshev_value(d: int, z: Fraction) -> Fraction:
    """T_d(z) by the three-term recurrence, exactly."""
    z = Fraction(z)
    prev, cur = Fraction(1), z
    if d == 0:
        return prev
    for _ in range(d - 1):
        prev, cur = cur, 2 * z * cur - prev
    return cur


def chebyshev_degree(n: int, eps=THIRD) -> int:
    """Least d with T_d(1 + 1/(n-1)) >= 1/eps."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if n < 2:
        return n
    z = Fraction(n, n - 1)
    d = 1
    while chebyshev_value(d, z) < 1 / eps:
        d += 1
    return d


def degree_cap(n: int) -> int:
    """ceil(C_DEGREE * sqrt(n)), computed exactly."""
    # smallest integer k with k^2 >= (25/16) n
    k = math.isqrt(25 * n // 16)
    while Fraction(k * k) < C_DEGREE ** 2 * n:
        k += 1
    return k


@dataclass(frozen=True)
class OrChebyshev:
    n: int
    degree: int
    eps: Fraction
    univariate: UnivariatePoly          # r(k) = p(x) for |x| = k
    layer_coeffs: tuple[Fraction, ...]  # coefficient shared by all |S| = j monomials
    max_error: Fraction
    verified: bool
    checked_on: str                     # "all-inputs" or "weights"
    approx: ApproxPolynomial | None     # multilinear form, when expanded

    def mon(self) -> int:
        return sum(comb(self.n, j) for j, c in enumerate(self.layer_coeffs) if c)

    def to_json(self) -> dict:
        out = {
            "n": self.n, "degree": self.degree, "eps": str(self.eps),
            "degree_cap": degree_cap(self.n), "mon": self.mon(),
            "univariate": [str(c) for c in self.univariate.coeffs],
            "layer_coeffs": [str(c) for c in self.layer_coeffs],
            "max_error": str(self.max_error), "verified": self.verified,
            "checked_on": self.checked_on,
        }
        if self.approx is not None:
            out["polynomial"] = self.approx.to_json()
        return out


def _layer_coeffs(values: list[Fraction]) -> list[Fraction]:
    """c_j = sum_i (-1)^(j-i) C(j, i) r(i): the symmetric multilinear expansion."""
    return [sum(((-1) ** (j - i) * comb(j, i) * values[i] for i in range(j + 1)), Fraction(0))
            for j in range(len(values))]


def or_chebyshev(n: int, eps=THIRD) -> OrChebyshev:
    """p(x) = 1 - T_d((n - |x|)/(n - 1)) / T_d(n/(n - 1)); zero at 0 and within
    eps of 1 elsewhere.  When d would reach n the exact OR polynomial is used."""
    if n < 1:
        raise ValueError("n must be positive")
    eps = Fraction(eps)
    d = chebyshev_degree(n, eps)
    if d >= n:
        d = n
        values = [Fraction(int(k > 0)) for k in range(n + 1)]
    else:
        z0 = Fraction(n, n - 1)
        top = chebyshev_value(d, z0)
        values = [1 - chebyshev_value(d, Fraction(n - k, n - 1)) / top for k in range(n + 1)]
    r = UnivariatePoly.interpolate(list(enumerate(values))[: d + 1])
    if any(r(k) != v for k, v in enumerate(values)):
        raise AssertionError("interpolant disagrees with the construction")
    layers = _layer_coeffs(values)
    err = max(abs(v - int(k > 0)) for k, v in enumerate(values))
    approx = None
    checked = "weights"
    if n <= EXPAND_MAX_N:
        poly = MultilinearPoly(n, {m: layers[m.bit_count()] for m in range(1 << n)
                                   if layers[m.bit_count()]})
        if n <= FULL_CHECK_MAX_N:
            approx = verify_approx(named_family("or", n), poly, eps)
            err = approx.max_error
            checked = "all-inputs"
        else:
            approx = ApproxPolynomial(poly, eps, err <= eps, err)
    return OrChebyshev(n, r.degree, eps, r, tuple(layers[: r.degree + 1]), err, err <= eps,
                       checked, approx)


__all__ = ["C_DEGREE", "chebyshev_value", "chebyshev_degree", "degree_cap", "OrChebyshev",
           "or_chebyshev"]
