"""Small integer/bit helpers shared across modules."""

from __future__ import annotations

import math
from fractions import Fraction


def popcount(x: int) -> int:
    return x.bit_count()


def bits_of(mask: int) -> list[int]:
    """0-based positions of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def ceil_log2(x: int) -> int:
    """Smallest k >= 0 with 2**k >= x (0 for x <= 1)."""
    if x <= 1:
        return 0
    return (x - 1).bit_length()


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def log2_exact(x: int | Fraction) -> Fraction | float:
    """log2 of ``x`` as a Fraction when x is a power of two, else a float."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log2 of non-positive value {x}")
    if x.denominator == 1 and is_power_of_two(x.numerator):
        return Fraction(x.numerator.bit_length() - 1)
    if x.numerator == 1 and is_power_of_two(x.denominator):
        return Fraction(-(x.denominator.bit_length() - 1))
    return math.log2(x.numerator) - math.log2(x.denominator)
