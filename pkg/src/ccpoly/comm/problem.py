"""Two-party problems f(x, y) and their communication matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..boolfn import BooleanFunction, named_family
from ..linalg import KRONECKER_CAP, ExactMatrix, kronecker, rank_of_int_rows

COMPOSITIONS = ("and", "or", "xor", "raw")
MAX_MATRIX_ARITY = 12  # 2n <= 24: a 4096 x 4096 matrix

_OPS = {
    "and": lambda x, y: x & y,
    "or": lambda x, y: x | y,
    "xor": lambda x, y: x ^ y,
}


@dataclass(frozen=True)
class CommProblem:
    """Entry (x, y) of ``matrix`` is f(x, y); rows are Alice's inputs.

    For composed problems f(x, y) = g(x o y); RAW problems carry only a matrix.
    """

    matrix: ExactMatrix
    composition: str = "raw"
    g: BooleanFunction | None = None
    name: str | None = None
    _rows: tuple[tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.composition not in COMPOSITIONS:
            raise ValueError(f"unknown composition {self.composition!r}")
        if not self.matrix.is_boolean():
            raise ValueError("communication matrix entries must be 0/1")
        if (self.composition == "raw") != (self.g is None):
            raise ValueError("RAW problems carry no g; composed problems need one")
        if not self._rows:
            object.__setattr__(self, "_rows", tuple(self.matrix.row(i)
                                                    for i in range(self.matrix.rows)))

    @property
    def int_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.rows, self.matrix.cols

    @property
    def n(self) -> int | None:
        if self.g is not None:
            return self.g.n
        r, c = self.shape
        if r == c and r & (r - 1) == 0 and r:
            return r.bit_length() - 1
        return None

    def value(self, x: int, y: int) -> int:
        return self._rows[x][y]

    def describe(self) -> dict:
        return {"name": self.name, "composition": self.composition,
                "n": self.n, "rows": self.shape[0], "cols": self.shape[1]}


def build_problem(g: BooleanFunction, composition: str = "and",
                  name: str | None = None) -> CommProblem:
    key = composition.lower()
    if key not in _OPS:
        raise ValueError(f"unsupported composition {composition!r}")
    if g.n > MAX_MATRIX_ARITY:
        raise ValueError(f"arity {g.n} exceeds the matrix cap n <= {MAX_MATRIX_ARITY}")
    op = _OPS[key]
    t = g.table
    size = 1 << g.n
    rows = tuple(tuple(t[op(x, y)] for y in range(size)) for x in range(size))
    M = ExactMatrix(size, size, tuple(v for r in rows for v in r))
    return CommProblem(M, key, g, name, rows)


def raw_problem(matrix: ExactMatrix | Sequence[Sequence[int]], name: str | None = None) -> CommProblem:
    if not isinstance(matrix, ExactMatrix):
        matrix = ExactMatrix.from_rows(matrix)
    return CommProblem(matrix, "raw", None, name)


def equality(n: int) -> CommProblem:
    return raw_problem(ExactMatrix.identity(1 << n), name="EQ")


def disjointness(n: int) -> CommProblem:
    return build_problem(named_family("nor", n), "and", name="DISJ")


def inner_product(n: int) -> CommProblem:
    return build_problem(named_family("xor", n), "and", name="IP")


def inner_product_complement(n: int) -> CommProblem:
    return build_problem(named_family("xor", n).complement(), "and", name="IPbar")


def complement(p: CommProblem) -> CommProblem:
    M = ExactMatrix(p.matrix.rows, p.matrix.cols, tuple(1 - v for v in p.matrix.entries))
    name = None if p.name is None else f"not({p.name})"
    if p.g is None:
        return CommProblem(M, "raw", None, name)
    return CommProblem(M, p.composition, p.g.complement(), name)


def comm_rank(p: CommProblem) -> int:
    return rank_of_int_rows(p.int_rows)


def and_power(p: CommProblem, m: int, cap: int = KRONECKER_CAP) -> CommProblem:
    """f^(AND m): the m-fold Kronecker power of the matrix."""
    if m < 1:
        raise ValueError("m must be >= 1")
    M = p.matrix
    for _ in range(m - 1):
        M = kronecker(M, p.matrix, cap=cap)
    if m == 1:
        return p
    name = None if p.name is None else f"{p.name}^and{m}"
    return CommProblem(M, "raw", None, name)


def eq_to_disj(x: Sequence[int], y: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Map EQ inputs to DISJ inputs: x_i -> (x_i, not x_i), y_i -> (not y_i, y_i)."""
    if len(x) != len(y):
        raise ValueError("inputs must have equal length")
    xs: list[int] = []
    ys: list[int] = []
    for a, b in zip(x, y):
        if a not in (0, 1) or b not in (0, 1):
            raise ValueError("inputs must be bit sequences")
        xs += [a, 1 - a]
        ys += [1 - b, b]
    return tuple(xs), tuple(ys)


def eq_value(x: Sequence[int], y: Sequence[int]) -> int:
    return int(tuple(x) == tuple(y))


def disj_value(x: Sequence[int], y: Sequence[int]) -> int:
    return int(not any(a & b for a, b in zip(x, y)))


__all__ = [
    "CommProblem", "build_problem", "raw_problem", "equality", "disjointness",
    "inner_product", "inner_product_complement", "complement", "comm_rank",
    "and_power", "eq_to_disj", "eq_value", "disj_value",
]
