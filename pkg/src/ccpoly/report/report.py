"""Bound reports: computed quantities turned into inequalities on communication
measures, each tagged with the result it instantiates and how it was obtained."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .._bits import ceil_log2, log2_exact
from ..approx.rank import approx_rank_lower
from ..boolfn import is_monotone, is_symmetric, named_family
from ..comm import (
    CommProblem, CoverSearchLimit, comm_rank, cover_number_exact, d_exact, d_one_round, distinct_row_count,
    lovasz_saks_protocol, min_cover,
)
from ..linalg import ExactMatrix
from ..polynomial import mobius_transform
from ..sensitivity import so_monomial_lower_bound

MEASURES = ("Q", "Q*", "Q_c", "Q_2", "Q_eps", "C*", "D", "D^1round")
RELATIONS = (">=", "<=", "=")
FLAGS = ("exact", "witnessed", "conditional")
SEARCH_CAP = 16
APPROX_LOWER_CAP = 16

# anchor id -> statement it instantiates
ANCHORS = {
    "clean-log-rank": "clean qubit protocols: Q_c(f) >= log rank(f) + 1",
    "entanglement-log-rank": "qubits with prior entanglement: Q*(f) >= log rank(f) / 2",
    "qubit-log-rank": "Q(f) >= Q*(f) >= log rank(f) / 2",
    "bits-entanglement-log-rank": "classical bits with prior entanglement: C*(f) >= log rank(f)",
    "deterministic-log-rank": "D(f) >= log rank(f)",
    "protocol-tree-search": "D(f) by exhaustive protocol-tree search",
    "one-round-distinct-rows": "D^1round(f) = log(#distinct rows) + 1",
    "one-round-upper": "D(f) <= D^1round(f)",
    "lovasz-saks": "D(f) <= (1 + log(C^1(f) + 1))(2 + log rank(f))",
    "lovasz-saks-run": "D(f) <= worst-case cost of the executed cover protocol",
    "approx-log-rank": "Q_2(f) >= log m~(f) / 2 with m~(f) = approximate rank",
    "approx-monomials-so": "m~on(g) >= 2^sqrt(so(g)/12)",
    "eq-small-error": "Q_eps(EQ) >= n/2 when eps < 2^-n",
    "disj-small-error": "Q_eps(DISJ) >= n/4 when eps < 2^-n (via EQ -> DISJ)",
}

MIRROR_ASSUMPTION = "approximate decomposition number of g(x AND y) is at least m~on(g)"


@dataclass(frozen=True)
class Entry:
    measure: str
    relation: str
    value: str
    real: float
    anchor: str
    flag: str
    assumption: str | None = None
    condition: str | None = None

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.flag not in FLAGS:
            raise ValueError(f"unknown flag {self.flag!r}")
        if self.anchor not in ANCHORS:
            raise ValueError(f"unknown anchor {self.anchor!r}")
        if self.flag == "conditional" and not self.assumption:
            raise ValueError("conditional entries must name their assumption")

    def to_json(self) -> dict:
        out: dict[str, Any] = {"measure": self.measure, "relation": self.relation,
                               "value": self.value, "real": self.real,
                               "anchor": self.anchor, "flag": self.flag}
        if self.assumption:
            out["assumption"] = self.assumption
        if self.condition:
            out["condition"] = self.condition
        return out

    def to_text(self) -> str:
        s = f"{self.measure} {self.relation} {self.value}"
        if self.value != _plain(self.real):
            s += f"  (real {self.real})"
        s += f"  [{self.anchor}; {self.flag}]"
        if self.condition:
            s += f"  if {self.condition}"
        if self.assumption:
            s += f"  assuming {self.assumption}"
        return s


@dataclass(frozen=True)
class Annotation:
    id: str
    statement: str
    provenance: str = "external"

    def to_json(self) -> dict:
        return {"id": self.id, "statement": self.statement, "provenance": self.provenance}


@dataclass
class BoundReport:
    problem: dict
    entries: list[Entry] = field(default_factory=list)
    annotations: list[Annotation] = field(default_factory=list)
    quantities: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"problem": self.problem,
                "quantities": self.quantities,
                "entries": [e.to_json() for e in self.entries],
                "annotations": [a.to_json() for a in self.annotations]}

    def to_text(self) -> str:
        lines = [f"problem: {self.problem}"]
        for k, v in self.quantities.items():
            lines.append(f"  {k}: {v}")
        lines.append("entries:")
        lines += [f"  {e.to_text()}" for e in self.entries]
        if self.annotations:
            lines.append("annotations (external, not computed):")
            lines += [f"  {a.id}: {a.statement}" for a in self.annotations]
        return "\n".join(lines)

    def find(self, measure: str, relation: str | None = None) -> list[Entry]:
        return [e for e in self.entries if e.measure == measure
                and (relation is None or e.relation == relation)]

    def consistency_violations(self) -> list[str]:
        """Measures whose largest lower bound exceeds their smallest upper bound."""
        out = []
        for m in MEASURES:
            lows = [e.real for e in self.entries if e.measure == m and e.relation in (">=", "=")]
            highs = [e.real for e in self.entries if e.measure == m and e.relation in ("<=", "=")]
            if lows and highs and max(lows) > min(highs) + 1e-12:
                out.append(f"{m}: lower {max(lows)} > upper {min(highs)}")
        return out

    @property
    def consistent(self) -> bool:
        return not self.consistency_violations()


def _plain(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(x)


def _entry(measure, relation, real: float, exact: Fraction | None, anchor, flag,
           assumption=None, condition=None) -> Entry:
    """Exact rational value when known; otherwise the integer implied by the
    real bound (measures are whole numbers of (qu)bits)."""
    if exact is not None:
        value = str(exact)
    elif relation == ">=":
        value = str(math.ceil(real - 1e-12))
    elif relation == "<=":
        value = str(math.floor(real + 1e-12))
    else:
        value = _plain(real)
    return Entry(measure, relation, value, round(float(real), 9), anchor, flag, assumption, condition)


def _log2(x: int) -> tuple[float, Fraction | None]:
    lg = log2_exact(x)
    return (float(lg), lg) if isinstance(lg, Fraction) else (lg, None)


# ---------------------------------------------------------------------------
# quantities
# ---------------------------------------------------------------------------

def recognize(p: CommProblem) -> str | None:
    """Name EQ / DISJ / IP when the matrix is one of them."""
    if p.name:
        return p.name
    if p.g is not None and p.composition == "and":
        n = p.g.n
        if p.g == named_family("nor", n):
            return "DISJ"
        if p.g == named_family("xor", n):
            return "IP"
    r, c = p.shape
    if r == c and r & (r - 1) == 0 and p.matrix == ExactMatrix.identity(r):
        return "EQ"
    return None


def compute_quantities(p: CommProblem, eps=Fraction(1, 3), search_cap: int = SEARCH_CAP,
                       approx_cap: int = APPROX_LOWER_CAP, run_protocol: bool = True) -> dict:
    """Everything the report can use, computed exactly; costly searches run
    only below their caps."""
    q: dict[str, Any] = {}
    rank = comm_rank(p)
    q["rank"] = rank
    q["distinct_rows"] = distinct_row_count(p)
    q["d_one_round"] = d_one_round(p)
    cost = d_exact(p, cap=search_cap)
    q["d_exact"] = {"lower": cost.lower, "upper": cost.upper, "exact": cost.exact}
    nrows, ncols = p.shape
    if p.g is not None:
        poly = mobius_transform(p.g)
        q["mon"] = poly.mon()
        q["deg"] = poly.degree()
        prof = is_symmetric(p.g)
        q["symmetric"] = prof is not None
        if prof is not None:
            q["t"] = prof.t
        q["monotone"] = is_monotone(p.g)
        mb = so_monomial_lower_bound(p.g)
        q["so"] = {"value": mb.so, "flag": mb.flag}
    if max(nrows, ncols) <= search_cap:
        ones = any(any(r) for r in p.int_rows)
        zeros = any(not all(r) for r in p.int_rows)
        if ones and zeros:
            try:
                cover = min_cover(p, 1, cap=search_cap)
                q["C1"] = len(cover)
            except CoverSearchLimit as exc:
                cover = exc.best
                q["C1_upper"] = len(cover)
            try:
                q["C0"] = cover_number_exact(p, 0, cap=search_cap)
            except CoverSearchLimit as exc:
                q["C0_upper"] = len(exc.best)
            if run_protocol:
                proto = lovasz_saks_protocol(p, cover)
                worst, wrong = proto.sweep()
                q["lovasz_saks"] = {"bound": proto.bound(), "max_cost": worst, "correct": not wrong}
    if max(nrows, ncols) <= approx_cap:
        lb = approx_rank_lower(p.matrix, eps)
        q["approx_rank_lower"] = {"value": lb.value, "method": lb.method, "eps": str(Fraction(eps))}
    return q


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def _annotations(p: CommProblem, kind: str | None, q: dict) -> list[Annotation]:
    out = []
    if kind == "DISJ":
        out.append(Annotation("razborov-randomized",
                              "randomized public-coin complexity of disjointness is linear in n"))
        out.append(Annotation("nayak-one-round",
                              "one-round bounded-error qubit complexity of DISJ is > 0.08 n "
                              "(random access code bound)"))
        out.append(Annotation("disj-entangled-log-n",
                              "bounded-error qubit complexity of DISJ with entanglement is Omega(log n)"))
    if p.g is not None and q.get("symmetric") and p.composition == "and":
        out.append(Annotation("razborov-symmetric",
                              "for symmetric g, randomized complexity is Omega(so(g)), hence "
                              "D(f) in O(R_2^pub(f) log n)"))
    if p.g is not None and q.get("monotone") and p.composition == "and":
        out.append(Annotation("monotone-quadratic", "for monotone g: D(f) in O(Q*(f)^2)",
                              provenance="derived-asymptotic"))
    if kind in ("EQ", "DISJ", "IP"):
        out.append(Annotation("superdense-coding",
                              "log-rank bounds for EQ, DISJ and IP are tight up to one bit "
                              "(superdense-coding upper bounds)"))
    n = p.n
    if n is not None and q["rank"] == p.shape[0] == p.shape[1]:
        out.append(Annotation("almost-all-functions",
                              "almost all f on n-bit inputs have full rank, so Q*(f) >= n/2 and "
                              "C*(f) >= n (random Boolean matrices are almost surely nonsingular)"))
    return out


def assemble_report(p: CommProblem, quantities: dict | None = None, conditional: bool = False,
                    **kwargs) -> BoundReport:
    q = quantities if quantities is not None else compute_quantities(p, **kwargs)
    kind = recognize(p)
    desc = p.describe()
    desc["kind"] = kind
    rep = BoundReport(desc, quantities=q)
    E = rep.entries
    rank = q["rank"]
    if rank >= 1:
        lg, lg_exact = _log2(rank)
        half = None if lg_exact is None else lg_exact / 2
        E.append(_entry("Q_c", ">=", lg + 1, None if lg_exact is None else lg_exact + 1,
                        "clean-log-rank", "exact"))
        E.append(_entry("Q*", ">=", lg / 2, half, "entanglement-log-rank", "exact"))
        E.append(_entry("Q", ">=", lg / 2, half, "qubit-log-rank", "exact"))
        E.append(_entry("C*", ">=", lg, lg_exact, "bits-entanglement-log-rank", "exact"))
        E.append(_entry("D", ">=", ceil_log2(rank), Fraction(ceil_log2(rank)),
                        "deterministic-log-rank", "exact"))
    else:
        for m, a in (("Q*", "entanglement-log-rank"), ("C*", "bits-entanglement-log-rank")):
            E.append(_entry(m, ">=", 0, Fraction(0), a, "exact"))
    de = q.get("d_exact")
    if de:
        if de["exact"]:
            E.append(_entry("D", "=", de["lower"], Fraction(de["lower"]), "protocol-tree-search", "exact"))
        else:
            E.append(_entry("D", "<=", de["upper"], Fraction(de["upper"]), "one-round-upper", "exact"))
    d1 = q["d_one_round"]
    E.append(_entry("D^1round", "=", d1, Fraction(d1), "one-round-distinct-rows", "exact"))
    E.append(_entry("D", "<=", d1, Fraction(d1), "one-round-upper", "exact"))
    ls = q.get("lovasz_saks")
    if ls and ls["correct"]:
        E.append(_entry("D", "<=", ls["bound"], Fraction(ls["bound"]), "lovasz-saks", "exact"))
        E.append(_entry("D", "<=", ls["max_cost"], Fraction(ls["max_cost"]), "lovasz-saks-run",
                        "witnessed"))
    arl = q.get("approx_rank_lower")
    if arl and arl["value"] >= 1 and Fraction(arl["eps"]) == Fraction(1, 3):
        lg, lg_exact = _log2(arl["value"])
        E.append(_entry("Q_2", ">=", lg / 2, None if lg_exact is None else lg_exact / 2,
                        "approx-log-rank", "exact"))
    n = p.n
    if kind == "EQ" and n is not None:
        E.append(_entry("Q_eps", ">=", n / 2, Fraction(n, 2), "eq-small-error", "exact",
                        condition="eps < 2^-n"))
    if kind == "DISJ" and n is not None:
        E.append(_entry("Q_eps", ">=", n / 4, Fraction(n, 4), "disj-small-error", "exact",
                        condition="eps < 2^-n"))
    so = q.get("so")
    if conditional and so is not None and p.composition == "and":
        # the bound 2^sqrt(so/12) on m~on(g), carried over to m~(f)
        expo = math.sqrt(so["value"] / 12)
        E.append(_entry("Q_2", ">=", expo / 2, None, "approx-monomials-so", "conditional",
                        assumption=MIRROR_ASSUMPTION))
    rep.annotations = _annotations(p, kind, q)
    return rep


__all__ = ["MEASURES", "ANCHORS", "Entry", "Annotation", "BoundReport", "recognize",
           "compute_quantities", "assemble_report"]
