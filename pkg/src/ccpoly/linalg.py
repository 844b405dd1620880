"""Exact integer/rational matrices: rank, rank factorization, Kronecker
products, Gershgorin certification and random 0/1 matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Number = int | Fraction

KRONECKER_CAP = 4096


def _exact(v) -> Number:
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, (float, np.floating)):
        if not math.isfinite(v):
            raise ValueError(f"non-finite entry {v!r}")
        # exact binary expansion, no rounding
        return _exact(Fraction(float(v)))
    if isinstance(v, str):
        return _exact(Fraction(v))
    raise TypeError(f"unsupported entry type {type(v).__name__}")


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[Number, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        entries = tuple(_exact(v) for v in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"{len(entries)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, d: int) -> "ExactMatrix":
        return cls(d, d, tuple(int(i == j) for i in range(d) for j in range(d)))

    @classmethod
    def constant(cls, rows: int, cols: int, value: Number = 1) -> "ExactMatrix":
        return cls(rows, cols, (value,) * (rows * cols))

    def __getitem__(self, idx: tuple[int, int]) -> Number:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Number, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Number]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        return ExactMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((a * b for a, b in zip(r, ot.row(j)) if a and b), 0))
        return ExactMatrix(self.rows, other.cols, tuple(out))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return ExactMatrix(self.rows, self.cols,
                           tuple(a - b for a, b in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_boolean(self) -> bool:
        return all(v in (0, 1) for v in self.entries)

    def to_numpy(self) -> np.ndarray:
        return np.array([float(v) for v in self.entries], dtype=float).reshape(self.rows, self.cols)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[Fraction(v).numerator, Fraction(v).denominator] for v in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        ents = []
        for e in data["entries"]:
            if isinstance(e, (list, tuple)):
                ents.append(Fraction(int(e[0]), int(e[1])))
            else:
                ents.append(e)
        return cls(int(data["rows"]), int(data["cols"]), tuple(ents))


@dataclass(frozen=True)
class RankFactorization:
    left: ExactMatrix
    right: ExactMatrix
    r: int


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def rank_of_int_rows(rows: Iterable[Sequence[int]]) -> int:
    """Bareiss fraction-free rank of integer rows.

    Duplicate and zero rows are dropped first; neither changes the rank.
    Pivot: first nonzero entry in the column.
    """
    work = [list(r) for r in {tuple(r) for r in rows} if any(r)]
    m = len(work)
    if m == 0:
        return 0
    ncols = len(work[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, m) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pr = work[rank]
        p = pr[c]
        for i in range(rank + 1, m):
            ri = work[i]
            a = ri[c]
            if a:
                work[i] = [(p * ri[j] - a * pr[j]) // prev for j in range(ncols)]
            elif p != prev:
                work[i] = [(p * v) // prev for v in ri]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    out = []
    for i in range(M.rows):
        row = M.row(i)
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def rank_exact(M: ExactMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return rank_of_int_rows(_integer_rows(M))


def rref(rows: Sequence[Sequence[Number]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    work = [[Fraction(v) for v in r] for r in rows]
    m = len(work)
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [v * inv for v in work[r]]
        pr = work[r]
        for i in range(m):
            if i != r and work[i][c] != 0:
                a = work[i][c]
                work[i] = [vi - a * vp for vi, vp in zip(work[i], pr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work, pivots


def nullspace(rows: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} over the rationals."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def solve_exact(rows: Sequence[Sequence[Number]], rhs: Sequence[Number]):
    """Solve A v = b exactly.

    Returns (particular, nullspace basis) or None if inconsistent.  The
    particular solution sets all free variables to zero.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return x, basis


def rank_factorization(M: ExactMatrix) -> RankFactorization:
    """M = left @ right with left = the leftmost independent columns of M."""
    if M.rows == 0 or M.cols == 0:
        return RankFactorization(ExactMatrix(M.rows, 0, ()), ExactMatrix(0, M.cols, ()), 0)
    red, pivots = rref(M.to_rows())
    r = len(pivots)
    left = M.submatrix(range(M.rows), pivots)
    right = ExactMatrix(r, M.cols, tuple(v for row in red[:r] for v in row))
    return RankFactorization(left, right, r)


def kronecker(M: ExactMatrix, N: ExactMatrix, cap: int = KRONECKER_CAP) -> ExactMatrix:
    rows, cols = M.rows * N.rows, M.cols * N.cols
    if rows > cap or cols > cap:
        raise ValueError(f"Kronecker product {rows}x{cols} exceeds cap {cap}")
    out = []
    for i in range(M.rows):
        for k in range(N.rows):
            nrow = N.row(k)
            for j in range(M.cols):
                a = M[i, j]
                out.extend(a * b for b in nrow)
    return ExactMatrix(rows, cols, tuple(out))


def distinct_rows(M: ExactMatrix) -> int:
    return len({M.row(i) for i in range(M.rows)})


# ---------------------------------------------------------------------------
# Gershgorin certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GershgorinCertificate:
    certified: bool
    min_margin: Fraction     # min_i |M_ii| - sum_{j != i} |M_ij|
    max_deviation: Fraction  # max entry-wise distance from the identity

    def __bool__(self) -> bool:
        return self.certified


def gershgorin_full_rank_check(M: ExactMatrix, eps=None) -> GershgorinCertificate:
    """Certify full rank when every Gershgorin disc excludes 0.

    A negative answer is "uncertified", never a singularity claim.  If ``eps``
    is given, M must lie within eps of the identity entry-wise.
    """
    if M.rows != M.cols:
        raise ValueError(f"matrix is {M.rows}x{M.cols}, not square")
    d = M.rows
    margin = None
    dev = Fraction(0)
    for i in range(d):
        row = M.row(i)
        off = sum((abs(v) for j, v in enumerate(row) if j != i), Fraction(0))
        m = abs(Fraction(row[i])) - off
        margin = m if margin is None else min(margin, m)
        dev = max(dev, max((abs(Fraction(v) - (j == i)) for j, v in enumerate(row)), default=Fraction(0)))
    if eps is not None and dev > Fraction(_exact(eps)):
        raise ValueError(f"matrix deviates {float(dev):.3g} from identity, more than eps={eps}")
    margin = Fraction(0) if margin is None else margin
    return GershgorinCertificate(d == 0 or margin > 0, margin, dev)


# ---------------------------------------------------------------------------
# random Boolean matrices
# ---------------------------------------------------------------------------

def random_boolean_matrix(m: int, seed, cols: int | None = None) -> ExactMatrix:
    rng = np.random.default_rng(seed)
    cols = m if cols is None else cols
    data = rng.integers(0, 2, size=(m, cols))
    return ExactMatrix(m, cols, tuple(int(v) for v in data.ravel()))


def singular_fraction_experiment(dims: Iterable[int], trials: int, seed: int = 0) -> list[dict]:
    """Fraction of uniformly random m x m 0/1 matrices with rank < m.

    Trial t at dimension m draws from the generator seeded by (seed, m, t).
    """
    table = []
    for m in dims:
        singular = 0
        for t in range(trials):
            rng = np.random.default_rng([seed, m, t])
            data = rng.integers(0, 2, size=(m, m)).tolist()
            if rank_of_int_rows(data) < m:
                singular += 1
        table.append({"dim": m, "trials": trials, "singular": singular,
                      "singular_fraction": singular / trials if trials else 0.0})
    return table
