import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ccpoly._bits import ceil_log2
from ccpoly.boolfn import BooleanFunction, index_to_bits, named_family
from ccpoly.comm import (
    CoverSearchLimit, RectangleCover, and_power, build_problem, comm_rank, cover_from_monomials,
    cover_number_exact, d_exact, d_one_round, disj_value, disjointness, distinct_row_count,
    eq_to_disj, eq_value, equality, inner_product, inner_product_complement, lovasz_saks_protocol,
    maximal_rectangles, min_cover, raw_problem, validate_cover, verify_rank_eq_mon,
)
from ccpoly.linalg import ExactMatrix, random_boolean_matrix
from ccpoly.polynomial import mobius_transform
from test_boolfn import tables


def test_matrix_entries_follow_composition():
    g = named_family("maj", 3)
    for comp, op in (("and", lambda a, b: a & b), ("or", lambda a, b: a | b), ("xor", lambda a, b: a ^ b)):
        p = build_problem(g, comp)
        assert all(p.value(x, y) == g(op(x, y)) for x in range(8) for y in range(8))


def test_named_ranks():
    assert comm_rank(equality(3)) == 8
    assert comm_rank(disjointness(3)) == 8
    assert comm_rank(build_problem(named_family("sym", 3, v="0110"), "and")) == 6


@given(tables(3))
def test_rank_equals_mon_for_and(g):
    p = build_problem(g, "and")
    assert comm_rank(p) == mobius_transform(g).mon() == oracles.rank(p.int_rows)


@given(tables(3))
def test_rank_equals_mon_of_negated_inputs_for_or(g):
    neg = BooleanFunction(g.n, tuple(g.table[x ^ ((1 << g.n) - 1)] for x in range(1 << g.n)))
    assert comm_rank(build_problem(g, "or")) == mobius_transform(neg).mon()


@pytest.mark.parametrize("n, count", [(1, 4), (2, 16), (3, 256)])
def test_exhaustive_identity_small(n, count):
    rep = verify_rank_eq_mon(n)
    assert rep.ok and rep.checked == count
    assert verify_rank_eq_mon(n, "or").ok


def test_identity_rejects_xor():
    with pytest.raises(ValueError):
        verify_rank_eq_mon(2, "xor")


def test_kronecker_powers():
    assert comm_rank(and_power(disjointness(1), 2)) == 4
    p = and_power(equality(1), 3)
    assert p.shape == (8, 8) and comm_rank(p) == 8
    assert and_power(equality(2), 1) is not None


def test_one_round():
    p = build_problem(named_family("thr", 4, t=3), "and")
    assert distinct_row_count(p) == 6 == oracles.distinct_rows(p.int_rows)
    assert d_one_round(p) == 4
    assert d_one_round(equality(2)) == 3
    assert d_one_round(raw_problem([[0] * 4] * 4)) == 1


def test_deterministic_cost_examples():
    assert d_exact(equality(2)).value == 3
    assert d_exact(raw_problem([[1, 1], [1, 1]])).value == 0
    assert d_exact(raw_problem([[0, 0], [0, 1]])).value == 2


@pytest.mark.parametrize("code", range(16))
def test_deterministic_cost_matches_tree_oracle(code):
    g = BooleanFunction.from_int(2, code)
    for comp in ("and", "or", "xor"):
        p = build_problem(g, comp)
        assert d_exact(p).value == oracles.deterministic_cost(p.int_rows)


def test_deterministic_cost_random_raw():
    for t in range(15):
        M = random_boolean_matrix(4, [9, t], cols=3 + t % 3)
        p = raw_problem(M)
        assert d_exact(p).value == oracles.deterministic_cost(p.int_rows)


def test_deterministic_cost_above_cap_is_bracketed():
    c = d_exact(equality(5), cap=4)
    assert (c.lower, c.upper) == (5, 6) and not c.exact
    with pytest.raises(ValueError):
        c.value


def test_covers():
    assert len(cover_from_monomials(named_family("or", 2))) == 2
    assert len(cover_from_monomials(named_family("and", 2))) == 1
    andor = cover_from_monomials(named_family("andor", 4))
    assert len(andor) == 4
    validate_cover(build_problem(named_family("andor", 4), "and"), andor)
    assert cover_number_exact(equality(2), 1) == 4
    assert cover_number_exact(raw_problem([[1, 1], [1, 1]]), 1) == 1
    assert cover_number_exact(build_problem(named_family("and", 1), "and"), 0) == 2


def test_cover_rejects_non_monotone():
    with pytest.raises(ValueError):
        cover_from_monomials(named_family("xor", 2))


@pytest.mark.parametrize("seed", range(12))
def test_min_cover_matches_brute_force(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(0, 1) for _ in range(4)] for _ in range(4)]
    p = raw_problem(rows)
    for target in (0, 1):
        if not any(v == target for r in rows for v in r):
            continue
        cover = min_cover(p, target)
        validate_cover(p, cover)
        assert len(cover) == oracles.cover_number(rows, target)


def test_cover_budget_returns_valid_cover():
    p = equality(4)
    with pytest.raises(CoverSearchLimit) as exc:
        min_cover(p, 0, node_budget=50)
    validate_cover(p, exc.value.best)


def test_maximal_rectangles_are_maximal():
    p = build_problem(named_family("maj", 3), "and")
    for rmask, cmask in maximal_rectangles(p, 1):
        rows = [x for x in range(8) if rmask >> x & 1]
        cols = [y for y in range(8) if cmask >> y & 1]
        assert all(p.value(x, y) for x in rows for y in cols)
        assert not any(all(p.value(x, y) for x in rows) for y in range(8) if y not in cols)
        assert not any(all(p.value(x, y) for y in cols) for x in range(8) if x not in rows)


def _check_protocol(p, cover, bound):
    proto = lovasz_saks_protocol(p, cover)
    cost, wrong = proto.sweep()
    assert not wrong
    assert cost <= proto.bound() == bound
    return proto


def test_lovasz_saks_examples():
    zero = raw_problem([[0, 0], [0, 0]])
    proto = lovasz_saks_protocol(zero, RectangleCover(0, ((frozenset({0, 1}), frozenset({0, 1})),)))
    assert proto.max_cost() <= 2 and all(proto.run(x, y).output == 0 for x in range(2) for y in range(2))
    # OR_2: the monomial cover of f is a 0-cover of the complement
    p = build_problem(named_family("or", 2), "and")
    cover = cover_from_monomials(named_family("or", 2))
    flipped = RectangleCover(0, cover.rectangles)
    from ccpoly.comm import complement
    _check_protocol(complement(p), flipped, 9)
    andor = build_problem(named_family("andor", 4), "and")
    proto = lovasz_saks_protocol(andor, cover_from_monomials(named_family("andor", 4)))
    cost, wrong = proto.sweep()
    assert not wrong and comm_rank(andor) == 9
    assert cost <= (1 + ceil_log2(5)) * (2 + ceil_log2(9))


def test_protocol_transcript_json():
    p = equality(2)
    proto = lovasz_saks_protocol(p, min_cover(p, 1))
    run = proto.run(1, 1)
    data = run.to_json()
    assert data["output"] == 1 and data["cost"] == len(data["bits"])
    assert int(data["transcript"], 16) >> (len(data["transcript"]) * 4 - len(data["bits"])) == \
        int(data["bits"] or "0", 2)


def test_eq_to_disj():
    assert eq_to_disj((0, 1), (0, 1)) == ((0, 1, 1, 0), (1, 0, 0, 1))
    xs, ys = eq_to_disj((0,), (1,))
    assert (xs, ys) == ((0, 1), (0, 1)) and disj_value(xs, ys) == 0 == eq_value((0,), (1,))


@settings(max_examples=50)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.integers(0, 2 ** n - 1), st.integers(0, 2 ** n - 1),
                                                     st.just(n))))
def test_eq_to_disj_property(case):
    x, y, n = case
    bx, by = index_to_bits(x, n), index_to_bits(y, n)
    assert eq_value(bx, by) == disj_value(*eq_to_disj(bx, by))


def test_ip_complement_full_rank():
    for n in range(1, 5):
        assert comm_rank(inner_product_complement(n)) == 2 ** n
        assert comm_rank(inner_product(n)) == 2 ** n - 1


def test_non_boolean_matrix_rejected():
    with pytest.raises(ValueError):
        raw_problem(ExactMatrix.from_rows([[2, 0], [0, 1]]))
