"""Command-line entry point: ``ccpoly <command> <spec> [options]``.

Problem specs are ``<funcspec>@and|or|xor`` (``name:NOR,n=3@and``),
``raw:<file>`` for a 0/1 matrix file, or a named problem such as ``eq:n=3``.
Exit status: 0 success, 1 suite failure, 2 usage or spec error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .approx import approx_degree, approx_mon_upper, approx_rank_lower, approx_rank_search
from .approx.lp import MAX_LP_ARITY
from .approx.rank import DEFAULT_RESTARTS, DEFAULT_SWEEPS, MAX_DIM
from .boolfn import SpecError, parse_function_spec
from .comm import (
    CommProblem, build_problem, comm_rank, d_exact, d_one_round, disjointness, distinct_row_count,
    equality, inner_product, inner_product_complement, raw_problem,
)
from .comm.problem import COMPOSITIONS
from .linalg import ExactMatrix
from .polynomial import mobius_transform
from .report import EXPERIMENTS, SUITES, assemble_report, run_experiment, verify_suite
from .report.report import APPROX_LOWER_CAP, SEARCH_CAP
from .sensitivity import so_monomial_lower_bound, zero_block_sensitivity

MATRIX_CAP = 1 << 12
DEFAULT_EPS = "1/3"

_NAMED = {"eq": equality, "disj": disjointness, "ip": inner_product, "ipbar": inner_product_complement}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

def _read_matrix_file(path: str) -> ExactMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read matrix file ({exc.strerror})", path) from None
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
            if isinstance(data, dict):
                return ExactMatrix.from_json(data)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise SpecError("malformed JSON matrix", path) from None
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise SpecError("JSON matrix must be a list of rows", path)
        rows = data
        for r in rows:
            for v in r:
                if v not in (0, 1) or isinstance(v, bool):
                    raise SpecError("matrix entries must be 0 or 1", json.dumps(v))
    else:
        rows = []
        for line in stripped.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            toks = re.split(r"[\s,]+", line)
            if len(toks) == 1 and re.fullmatch(r"[01]+", toks[0]):
                toks = list(toks[0])
            for t in toks:
                if t not in ("0", "1"):
                    raise SpecError("matrix entries must be 0 or 1", t)
            rows.append([int(t) for t in toks])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise SpecError("matrix rows must be non-empty and of equal length", path)
    return ExactMatrix.from_rows(rows)


def parse_problem_spec(spec: str, matrix_cap: int = MATRIX_CAP) -> CommProblem:
    spec = spec.strip()
    head, sep, rest = spec.partition(":")
    if sep and head == "raw":
        if not rest:
            raise SpecError("missing matrix file", spec)
        M = _read_matrix_file(rest)
        if not M.is_boolean():
            raise SpecError("matrix entries must be 0 or 1", rest)
        p = raw_problem(M)
    elif sep and head.lower() in _NAMED:
        m = re.fullmatch(r"n=([0-9]+)", rest.strip())
        if not m:
            raise SpecError("expected n=<int>", rest)
        n = int(m.group(1))
        if not 1 <= n <= 12:
            raise SpecError("arity outside 1..12", rest)
        p = _NAMED[head.lower()](n)
    else:
        fn, at, comp = spec.rpartition("@")
        if not at:
            raise SpecError("expected <funcspec>@and|or|xor, raw:<file> or eq:n=<int>", spec)
        if comp.lower() not in COMPOSITIONS or comp.lower() == "raw":
            raise SpecError("unknown composition", comp)
        g = parse_function_spec(fn)
        if g.n > 12:
            raise SpecError("arity too large for a communication matrix", fn)
        p = build_problem(g, comp.lower())
    if max(p.shape) > matrix_cap:
        raise SpecError(f"matrix exceeds the cap {matrix_cap}", spec)
    return p


def _parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SpecError("eps must be a rational such as 1/3", text) from None
    if not 0 < eps < Fraction(1, 2):
        raise SpecError("eps must lie in (0, 1/2)", text)
    return eps


# ---------------------------------------------------------------------------
# commands: each returns (payload, ok)
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> tuple[dict, bool]:
    p = parse_problem_spec(args.spec, args.matrix_cap)
    rep = assemble_report(p, conditional=args.conditional, eps=args.eps,
                          search_cap=args.search_cap, approx_cap=args.approx_cap)
    out = rep.to_json()
    out["consistent"] = rep.consistent
    out["_text"] = rep.to_text()
    return out, True


def _cmd_poly(args) -> tuple[dict, bool]:
    g = parse_function_spec(args.spec)
    poly = mobius_transform(g)
    out = {"n": g.n, "mon": poly.mon(), "deg": poly.degree(), "terms": poly.to_json()["terms"],
           "text": poly.to_text()}
    out["_text"] = f"{poly.to_text()}\nmon = {out['mon']}\ndeg = {out['deg']}"
    return out, True


def _cmd_rank(args) -> tuple[dict, bool]:
    p = parse_problem_spec(args.spec, args.matrix_cap)
    out: dict[str, Any] = {"problem": p.describe(), "rank": comm_rank(p),
                           "distinct_rows": distinct_row_count(p)}
    if p.g is not None and p.composition == "and":
        out["mon"] = mobius_transform(p.g).mon()
    return out, True


def _cmd_dexact(args) -> tuple[dict, bool]:
    p = parse_problem_spec(args.spec, args.matrix_cap)
    cost = d_exact(p, cap=args.search_cap)
    out = {"problem": p.describe(), "lower": cost.lower, "upper": cost.upper, "exact": cost.exact,
           "d_one_round": d_one_round(p), "rank": comm_rank(p)}
    return out, True


def _cmd_so(args) -> tuple[dict, bool]:
    g = parse_function_spec(args.spec)
    res = zero_block_sensitivity(g, args.mode)
    out = res.to_json()
    out["n"] = g.n
    out["monomial_bound"] = so_monomial_lower_bound(g, mode=args.mode).to_json()
    return out, True


def _cmd_approx(args) -> tuple[dict, bool]:
    eps = args.eps
    if args.what == "rank":
        spec = args.spec if "@" in args.spec or args.spec.split(":", 1)[0].lower() in ("raw", *_NAMED) \
            else args.spec + "@and"
        p = parse_problem_spec(spec, MAX_DIM)
        search = approx_rank_search(p.matrix, eps, r=args.target_rank, seed=args.seed,
                                    restarts=args.restarts, sweeps=args.sweeps)
        lower = approx_rank_lower(p.matrix, eps)
        out = {"what": "rank", "eps": str(eps), "target_rank": args.target_rank,
               "exact_rank": search.exact_rank, "success": search.success,
               "restarts_used": search.restarts,
               "best_dev": None if search.best_dev is None else round(search.best_dev, 12),
               "witness": None if search.witness is None else search.witness.to_json(),
               "lower": lower.to_json(), "seed": args.seed}
        return out, True
    g = parse_function_spec(args.spec)
    if g.n > MAX_LP_ARITY:
        raise SpecError(f"approximation LPs support n <= {MAX_LP_ARITY}", args.spec)
    if args.what == "degree":
        d, poly = approx_degree(g, eps)
        return {"what": "degree", "eps": str(eps), "degree": d, "polynomial": poly.to_json()}, True
    res = approx_mon_upper(g, eps)
    out = {"what": "monomials", "eps": str(eps), **res.to_json()}
    if eps == Fraction(1, 3):
        out["lower_bound"] = so_monomial_lower_bound(g).to_json()
    return out, True


def _suite_params(pairs: Sequence[str]) -> dict:
    params = {}
    for item in pairs:
        key, sep, val = item.partition("=")
        if not sep or not re.fullmatch(r"[a-z_]+", key) or not re.fullmatch(r"-?[0-9]+", val):
            raise SpecError("expected key=<int>", item)
        params[key] = int(val)
    return params


def _cmd_verify(args) -> tuple[dict, bool]:
    rep = verify_suite(args.name, **_suite_params(args.param))
    return rep.to_json(), rep.passed


def _cmd_experiment(args) -> tuple[dict, bool]:
    params = _suite_params(args.param)
    rows = run_experiment(args.name, seed=args.seed, **params)
    return {"experiment": args.name, "seed": args.seed, "rows": rows}, True


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def to_json_text(payload: dict) -> str:
    clean = {k: v for k, v in payload.items() if not k.startswith("_")}
    return json.dumps(clean, sort_keys=True, indent=2, default=_default)


def _flat_text(payload: dict, indent: str = "") -> list[str]:
    lines = []
    for k in sorted(payload):
        if k.startswith("_"):
            continue
        v = payload[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines += _flat_text(v, indent + "  ")
        else:
            lines.append(f"{indent}{k}: {json.dumps(v, default=_default)}")
    return lines


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json_text(payload)
    if fmt == "csv":
        if "rows" in payload:
            return _csv(payload["rows"]).rstrip("\n")
        if "counterexamples" in payload:
            return _csv(payload["counterexamples"]).rstrip("\n")
        raise UsageError("csv output is available for experiment and verify only")
    if "_text" in payload:
        return payload["_text"]
    if "rows" in payload:
        return _csv(payload["rows"]).replace(",", "\t").rstrip("\n")
    return "\n".join(_flat_text(payload))


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="text")
    common.add_argument("--eps", default=DEFAULT_EPS, help="error bound (default 1/3)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--matrix-cap", type=int, default=MATRIX_CAP,
                        help="largest matrix dimension accepted (default 4096)")
    common.add_argument("--search-cap", type=int, default=SEARCH_CAP,
                        help="largest dimension for tree and cover searches (default 16)")
    common.add_argument("--approx-cap", type=int, default=APPROX_LOWER_CAP,
                        help="largest dimension for approximate-rank lower bounds (default 16)")

    ap = argparse.ArgumentParser(prog="ccpoly",
                                 description="Rank, polynomial and protocol bounds for two-party problems.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full bound report for a problem")
    a.add_argument("spec")
    a.add_argument("--conditional", action="store_true",
                   help="also emit bounds that rest on a named unproven assumption")
    a.set_defaults(func=_cmd_analyze)

    a = sub.add_parser("poly", parents=[common], help="multilinear polynomial of a function")
    a.add_argument("spec")
    a.set_defaults(func=_cmd_poly)

    a = sub.add_parser("rank", parents=[common], help="exact rank of the communication matrix")
    a.add_argument("spec")
    a.set_defaults(func=_cmd_rank)

    a = sub.add_parser("dexact", parents=[common], help="deterministic complexity by tree search")
    a.add_argument("spec")
    a.set_defaults(func=_cmd_dexact)

    a = sub.add_parser("so", parents=[common], help="0-block sensitivity of a function")
    a.add_argument("spec")
    a.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    a.set_defaults(func=_cmd_so)

    a = sub.add_parser("approx", parents=[common], help="approximating polynomials and approximate rank")
    a.add_argument("spec")
    a.add_argument("--what", choices=("degree", "monomials", "rank"), default="degree")
    a.add_argument("--target-rank", type=int, default=1)
    a.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    a.add_argument("--sweeps", type=int, default=DEFAULT_SWEEPS)
    a.set_defaults(func=_cmd_approx)

    a = sub.add_parser("verify", parents=[common], help="run a verification suite")
    a.add_argument("name", choices=sorted(SUITES))
    a.add_argument("--param", action="append", default=[], metavar="KEY=INT")
    a.set_defaults(func=_cmd_verify)

    a = sub.add_parser("experiment", parents=[common], help="run a data experiment")
    a.add_argument("name", choices=sorted(EXPERIMENTS))
    a.add_argument("--param", action="append", default=[], metavar="KEY=INT")
    a.set_defaults(func=_cmd_experiment)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.eps = _parse_eps(args.eps)
        payload, ok = args.func(args)
        text = render(payload, args.format)
    except (SpecError, UsageError, ValueError) as exc:
        print(f"ccpoly: error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
