"""Exact-arithmetic tools for polynomial and rank lower bounds in communication complexity."""

from .boolfn import BooleanFunction, SymmetricProfile, named_family, parse_function_spec
from .linalg import ExactMatrix, rank_exact
from .polynomial import MultilinearPoly, mobius_transform

__version__ = "0.1.0"

__all__ = [
    "BooleanFunction", "SymmetricProfile", "named_family", "parse_function_spec",
    "ExactMatrix", "rank_exact", "MultilinearPoly", "mobius_transform",
]
