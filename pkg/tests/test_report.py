import json
import random

import pytest

from ccpoly.boolfn import BooleanFunction, named_family
from ccpoly.comm import build_problem, disjointness, equality, raw_problem
from ccpoly.report import (
    ANCHORS, EXPERIMENTS, SUITES, assemble_report, compute_quantities, run_experiment, verify_suite,
)
from ccpoly.report.report import FLAGS, MEASURES, Entry


def _value(rep, measure, relation):
    (e,) = [e for e in rep.find(measure, relation) if e.anchor not in ("lovasz-saks", "lovasz-saks-run")][:1]
    return e.value


@pytest.mark.parametrize("problem", [equality(4), disjointness(4)])
def test_full_rank_reports(problem):
    rep = assemble_report(problem)
    assert _value(rep, "Q*", ">=") == "2"
    assert _value(rep, "C*", ">=") == "4"
    assert _value(rep, "Q_c", ">=") == "5"
    assert rep.consistent


def test_constant_zero_report():
    rep = assemble_report(raw_problem([[0] * 4] * 4))
    assert _value(rep, "Q*", ">=") == "0"
    assert [e.value for e in rep.find("D", "=")] == ["0"]


def test_non_power_of_two_rank_is_ceilinged():
    rep = assemble_report(build_problem(named_family("sym", 3, v="0110"), "and"))
    (c,) = rep.find("C*", ">=")
    assert c.value == "3" and c.real == pytest.approx(2.584962501, abs=1e-9)


def _problems():
    out = []
    for n in (1, 2):
        for code in range(1 << (1 << n)):
            for comp in ("and", "or", "xor"):
                out.append(build_problem(BooleanFunction.from_int(n, code), comp))
    rng = random.Random(3)
    for _ in range(10):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        out.append(raw_problem([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)]))
    return out


def test_reports_are_consistent_and_well_formed():
    for p in _problems():
        rep = assemble_report(p, conditional=True)
        assert rep.consistent, rep.consistency_violations()
        for e in rep.entries:
            assert e.anchor in ANCHORS and e.flag in FLAGS and e.measure in MEASURES
            if e.flag == "conditional":
                assert e.assumption
        for a in rep.annotations:
            assert a.provenance in ("external", "derived-asymptotic")


def test_conditional_entries_follow_the_flag():
    p = disjointness(3)
    q = compute_quantities(p)
    on = assemble_report(p, q, conditional=True)
    off = assemble_report(p, q, conditional=False)
    assert any(e.flag == "conditional" for e in on.entries)
    assert not any(e.flag == "conditional" for e in off.entries)
    assert [e for e in on.entries if e.flag != "conditional"] == off.entries


def test_assembly_is_deterministic():
    p = build_problem(named_family("maj", 3), "and")
    a = json.dumps(assemble_report(p).to_json(), sort_keys=True)
    b = json.dumps(assemble_report(p).to_json(), sort_keys=True)
    assert a == b


def test_entry_validation():
    with pytest.raises(ValueError):
        Entry("Q", ">=", "1", 1.0, "clean-log-rank", "conditional")
    with pytest.raises(ValueError):
        Entry("R", ">=", "1", 1.0, "clean-log-rank", "exact")
    with pytest.raises(ValueError):
        Entry("Q", ">=", "1", 1.0, "made-up", "exact")


def test_crossing_bounds_are_detected():
    rep = assemble_report(equality(1))
    rep.entries.append(Entry("D", "<=", "0", 0.0, "one-round-upper", "exact"))
    assert not rep.consistent and rep.consistency_violations()


def test_named_problem_entries():
    eq = assemble_report(equality(3))
    assert [e.value for e in eq.find("Q_eps")] == ["3/2"]
    disj = assemble_report(disjointness(3))
    assert [e.value for e in disj.find("Q_eps")] == ["3/4"]
    assert {a.id for a in disj.annotations} >= {"razborov-randomized", "superdense-coding"}


@pytest.mark.parametrize("name, params", [
    ("rank-eq-mon", {"max_n": 3}),
    ("symmetric-monomials", {"max_n": 6}),
    ("mon-so-bound", {"max_n": 6}),
    ("lovasz-saks", {"max_n": 2}),
    ("kronecker-rank", {"trials": 3}),
    ("gershgorin", {"trials": 20}),
    ("eq-to-disj", {}),
])
def test_suites_pass(name, params):
    rep = verify_suite(name, **params)
    assert rep.passed and rep.instances > 0


def test_suite_instance_counts():
    assert verify_suite("eq-to-disj").instances == 16 + 4
    assert verify_suite("rank-eq-mon", max_n=2).instances == 4 + 16
    assert set(SUITES) == {"rank-eq-mon", "symmetric-monomials", "mon-so-bound", "lovasz-saks",
                           "kronecker-rank", "gershgorin", "eq-to-disj", "approx-monomials-so"}


def test_unknown_names():
    with pytest.raises(KeyError):
        verify_suite("nope")
    with pytest.raises(KeyError):
        run_experiment("nope")


def test_experiments():
    rows = run_experiment("andor-monomials")
    assert [r["mon"] for r in rows] == [9, 343, 50625] and all(r["match"] for r in rows)
    rows = run_experiment("symmetric-oneround", ns=(4,))
    row = next(r for r in rows if r["t"] == 3)
    assert row["rows_formula"] == 6 and row["d_one_round"] == 4 and row["match"]
    small = run_experiment("komlos", trials=300, seed=1)
    assert small == run_experiment("komlos", trials=300, seed=1)
    assert set(EXPERIMENTS) == {"komlos", "andor-monomials", "symmetric-oneround"}
