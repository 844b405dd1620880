"""Monochromatic rectangle covers and the Lovasz-Saks protocol."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._bits import bits_of, ceil_log2
from ..boolfn import BooleanFunction, is_monotone, minimal_true_points
from ..linalg import rank_of_int_rows
from .problem import CommProblem, comm_rank, complement

COVER_CAP = 16
NODE_BUDGET = 200_000

Rectangle = tuple[frozenset[int], frozenset[int]]


class CoverSearchLimit(ValueError):
    """The branch and bound ran out of nodes; ``best`` is still a valid cover."""

    def __init__(self, message: str, best: "RectangleCover"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class RectangleCover:
    target: int
    rectangles: tuple[Rectangle, ...]

    def __len__(self) -> int:
        return len(self.rectangles)

    def to_json(self) -> dict:
        return {"target": self.target,
                "rectangles": [{"rows": sorted(S), "cols": sorted(T)} for S, T in self.rectangles]}


def _mask(s) -> int:
    m = 0
    for i in s:
        m |= 1 << i
    return m


def validate_cover(p: CommProblem, cover: RectangleCover) -> None:
    """Raise ValueError unless every rectangle is target-colored and all
    target cells are covered."""
    if cover.target not in (0, 1):
        raise ValueError("cover target must be 0 or 1")
    nrows, ncols = p.shape
    covered = set()
    for S, T in cover.rectangles:
        for x in S:
            if not 0 <= x < nrows:
                raise ValueError(f"row {x} out of range")
            for y in T:
                if not 0 <= y < ncols:
                    raise ValueError(f"column {y} out of range")
                if p.value(x, y) != cover.target:
                    raise ValueError(f"rectangle is not {cover.target}-monochromatic at ({x}, {y})")
                covered.add((x, y))
    for x in range(nrows):
        for y in range(ncols):
            if p.value(x, y) == cover.target and (x, y) not in covered:
                raise ValueError(f"cell ({x}, {y}) is not covered")


def maximal_rectangles(p: CommProblem, target: int) -> list[tuple[int, int]]:
    """All maximal target-colored rectangles as (row mask, column mask).

    Column sets are the intersections of the rows' target-column sets; each
    is paired with every row that contains it.
    """
    nrows, ncols = p.shape
    row_sets = [_mask(y for y in range(ncols) if p.value(x, y) == target) for x in range(nrows)]
    intents: set[int] = set()
    for rs in row_sets:
        if not rs:
            continue
        new = {rs}
        new.update(i & rs for i in intents)
        intents |= new
    intents.discard(0)
    rects = []
    for T in intents:
        S = _mask(x for x in range(nrows) if row_sets[x] & T == T)
        rects.append((S, T))
    rects.sort(key=lambda st: (-st[0].bit_count() * st[1].bit_count(), bits_of(st[0]), bits_of(st[1])))
    return rects


def min_cover(p: CommProblem, target: int, cap: int = COVER_CAP,
              node_budget: int = NODE_BUDGET) -> RectangleCover:
    """A minimum-size target cover by branch and bound over maximal rectangles.

    Raises CoverSearchLimit (carrying the best cover found) when the search
    needs more than ``node_budget`` nodes.
    """
    nrows, ncols = p.shape
    if nrows > cap or ncols > cap:
        raise ValueError(f"{nrows}x{ncols} exceeds the cover-search cap {cap}x{cap}")
    rects = maximal_rectangles(p, target)

    def cells(S: int, T: int) -> int:
        m = 0
        for x in bits_of(S):
            m |= T << (x * ncols)
        return m

    rect_cells = [cells(S, T) for S, T in rects]
    need = 0
    for x in range(nrows):
        for y in range(ncols):
            if p.value(x, y) == target:
                need |= 1 << (x * ncols + y)
    if not need:
        return RectangleCover(target, ())
    by_cell: dict[int, list[int]] = {c: [] for c in bits_of(need)}
    for i, rc in enumerate(rect_cells):
        for c in bits_of(rc):
            by_cell[c].append(i)
    # cells sharing some rectangle with c
    reach = {c: _union(rect_cells[i] for i in idx) for c, idx in by_cell.items()}
    biggest = max(rc.bit_count() for rc in rect_cells)

    def lower_bound(unc: int) -> int:
        fooling = 0
        rest = unc
        while rest:
            c = (rest & -rest).bit_length() - 1
            fooling += 1
            rest &= ~reach[c]
        return max(fooling, -(-unc.bit_count() // biggest))

    best = _greedy(need, rect_cells)
    nodes = 0

    def search(unc: int, chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Stop
        if not unc:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(unc) >= len(best):
            return
        cell = min(bits_of(unc), key=lambda c: len(by_cell[c]))
        for i in by_cell[cell]:
            chosen.append(i)
            search(unc & ~rect_cells[i], chosen)
            chosen.pop()

    def build(idx: list[int]) -> RectangleCover:
        return RectangleCover(target, tuple((frozenset(bits_of(rects[i][0])), frozenset(bits_of(rects[i][1])))
                                            for i in sorted(idx)))

    try:
        search(need, [])
    except _Stop:
        raise CoverSearchLimit(f"cover search exceeded {node_budget} nodes", build(best)) from None
    return build(best)


class _Stop(Exception):
    pass


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _greedy(need: int, rect_cells: list[int]) -> list[int]:
    chosen = []
    unc = need
    while unc:
        i = max(range(len(rect_cells)), key=lambda k: ((rect_cells[k] & unc).bit_count(), -k))
        chosen.append(i)
        unc &= ~rect_cells[i]
    return chosen


def cover_number_exact(p: CommProblem, target: int, cap: int = COVER_CAP,
                       node_budget: int = NODE_BUDGET) -> int:
    return len(min_cover(p, target, cap, node_budget))


def cover_from_monomials(g: BooleanFunction, composition: str = "and") -> RectangleCover:
    """1-cover of g(x AND y) with one rectangle per minimal monomial of a monotone g."""
    if composition.lower() != "and":
        raise ValueError("monomial covers are defined for the AND composition")
    if not is_monotone(g):
        raise ValueError("g is not monotone")
    if g.table[0]:
        raise ValueError("g(0) must be 0")
    size = 1 << g.n
    rects = []
    for m in minimal_true_points(g):
        S = frozenset(x for x in range(size) if x & m == m)
        rects.append((S, S))
    return RectangleCover(1, tuple(rects))


# ---------------------------------------------------------------------------
# Lovasz-Saks protocol
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProtocolRun:
    x: int
    y: int
    transcript: str
    output: int

    @property
    def cost(self) -> int:
        return len(self.transcript)

    def to_json(self) -> dict:
        bits = self.transcript
        padded = bits + "0" * (-len(bits) % 4)
        hexstr = "".join(f"{int(padded[i:i + 4], 2):x}" for i in range(0, len(padded), 4))
        return {"input": {"x": self.x, "y": self.y}, "transcript": hexstr, "bits": bits,
                "output": self.output, "cost": self.cost}


@dataclass
class LovaszSaksProtocol:
    """Executable recursive protocol driven by a 0-cover.

    Each round costs at most 1 + ceil(log2(c + 1)) bits: a flag bit plus a
    fixed-width rectangle index (0 means "none").  A 1-cover of f is used as
    a 0-cover of the complement, and the output is negated back.
    """

    problem: CommProblem
    cover: RectangleCover
    _work: CommProblem = field(init=False, repr=False)
    _negate: bool = field(init=False, repr=False)
    _rank_cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        validate_cover(self.problem, self.cover)
        self._negate = self.cover.target == 1
        self._work = complement(self.problem) if self._negate else self.problem
        nrows, ncols = self.problem.shape
        self._rects = [(_mask(S), _mask(T)) for S, T in self.cover.rectangles]
        self._pat = [sum(v << y for y, v in enumerate(r)) for r in self._work.int_rows]
        self._all = ((1 << nrows) - 1, (1 << ncols) - 1)
        self.width = ceil_log2(len(self._rects) + 1)

    # rank of the submatrix rows x cols of the working (0-cover) problem
    def _rank(self, rmask: int, cmask: int) -> int:
        key = (rmask, cmask)
        if key not in self._rank_cache:
            cols = bits_of(cmask)
            sub = [[self._pat[x] >> y & 1 for y in cols] for x in bits_of(rmask)]
            self._rank_cache[key] = rank_of_int_rows(sub) if sub and cols else 0
        return self._rank_cache[key]

    def _mono(self, rmask: int, cmask: int) -> int | None:
        vals = {self._pat[x] & cmask for x in bits_of(rmask)}
        if vals == {0}:
            return 0
        if vals == {cmask}:
            return 1
        return None

    def _index(self, i: int) -> str:
        return format(i, f"0{self.width}b") if self.width else ""

    def run(self, x: int, y: int) -> ProtocolRun:
        rows, cols = self._all
        bits: list[str] = []
        while True:
            mono = self._mono(rows, cols)
            if mono is not None:
                out = mono
                break
            r = self._rank(rows, cols)
            type1 = [2 * self._rank(S & rows, cols) <= r for S, _ in self._rects]
            # Alice: a type-1 rectangle holding her row
            hit = next((i for i, (S, _) in enumerate(self._rects) if type1[i] and S >> x & 1), None)
            if hit is not None:
                bits.append("1" + self._index(hit + 1))
                rows &= self._rects[hit][0]
                continue
            bits.append("0")
            # Bob: a type-2 rectangle holding his column
            hit = next((j for j, (_, T) in enumerate(self._rects)
                        if not type1[j] and T >> y & 1), None)
            if hit is None:
                bits.append(self._index(0))
                out = 1
                break
            bits.append(self._index(hit + 1))
            cols &= self._rects[hit][1]
        if self._negate:
            out = 1 - out
        return ProtocolRun(x, y, "".join(bits), out)

    def bound(self) -> int:
        """(1 + ceil log2(c+1)) * (1 + ceil log2 rank) for a 0-cover;
        (1 + ceil log2(c+1)) * (2 + ceil log2 rank(f)) for a 1-cover of f."""
        c = len(self._rects)
        per_round = 1 + ceil_log2(c + 1)
        if self._negate:
            return per_round * (2 + ceil_log2(max(comm_rank(self.problem), 1)))
        return per_round * (1 + ceil_log2(max(comm_rank(self.problem), 1)))

    def sweep(self) -> tuple[int, list[tuple[int, int]]]:
        """Run every input; returns (max cost, inputs with a wrong output)."""
        nrows, ncols = self.problem.shape
        worst = 0
        wrong = []
        for x in range(nrows):
            for y in range(ncols):
                run = self.run(x, y)
                worst = max(worst, run.cost)
                if run.output != self.problem.value(x, y):
                    wrong.append((x, y))
        return worst, wrong

    def max_cost(self) -> int:
        return self.sweep()[0]


def lovasz_saks_protocol(p: CommProblem, cover: RectangleCover) -> LovaszSaksProtocol:
    return LovaszSaksProtocol(p, cover)


__all__ = [
    "CoverSearchLimit", "RectangleCover", "validate_cover", "maximal_rectangles", "min_cover",
    "cover_number_exact", "cover_from_monomials", "ProtocolRun",
    "LovaszSaksProtocol", "lovasz_saks_protocol",
]
