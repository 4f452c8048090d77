import pytest
from hypothesis import given, strategies as st

from binrel.core import OPS, NaiveRelation, Pair, QueryError, RelationDims, build_naive, oracle_query
from conftest import R0_N, R0_PAIRS, R0_SIGMA, relations


def scan_num(pairs, a, b, x, y):
    return sum(a <= p <= b and x <= q <= y for p, q in pairs)


def test_r0_frozen_values_match_scan(r0_oracle):
    assert scan_num(R0_PAIRS, 2, 3, 1, 3) == 3
    assert r0_oracle.query("rel_num", 2, 3, 1, 3) == 3
    assert r0_oracle.query("rel_sel_lab_fst", 2, 2, 1, 5) == Pair(2, 4)
    assert r0_oracle.query("rel_min_obj_fst", 2, 3, 3, 1) == Pair(3, 1)


def test_build_naive_dedups():
    r = build_naive(list(reversed(R0_PAIRS)) + [R0_PAIRS[3]], (R0_N, R0_SIGMA))
    assert r.t == 8
    assert r.pairs == sorted(Pair(*p) for p in R0_PAIRS)


def test_empty_relation_counts_zero():
    r = build_naive([], RelationDims(5, 4, 0))
    assert r.t == 0
    for op, (kinds, result) in OPS.items():
        if result == "count":
            args = [4 if k == "L" and i else 5 if k == "O" and i else 1 for i, k in enumerate(kinds)]
            assert r.query(op, *args) == 0, op


def test_full_grid():
    r = NaiveRelation([(a, x) for a in range(1, 5) for x in range(1, 6)], 5, 4)
    assert r.t == 20
    assert r.query("rel_num", 1, 4, 1, 5) == 20


def test_out_of_bounds_pair_rejected():
    with pytest.raises(ValueError):
        NaiveRelation([(5, 1)], 5, 4)
    with pytest.raises(ValueError):
        NaiveRelation([(1, 0)], 5, 4)


def test_query_validation(r0_oracle):
    with pytest.raises(QueryError):
        r0_oracle.query("no_such_op", 1)
    with pytest.raises(QueryError):
        r0_oracle.query("rel_num", 1, 2, 3)
    with pytest.raises(QueryError):
        r0_oracle.query("rel_sel_lab_fst", 1, 0, 1, 5)
    with pytest.raises(QueryError):
        r0_oracle.query("rel_num", 1, 6, 1, 5)
    with pytest.raises(QueryError):
        r0_oracle.query("rel_num", 1, 4, 1, 7)
    assert oracle_query(r0_oracle, "rel_num", 0, 5, 0, 6) == 8


def test_empty_ranges(r0_oracle):
    assert r0_oracle.query("rel_num", 3, 2, 1, 5) == 0
    assert r0_oracle.query("rel_acc", 1, 4, 4, 3) == []
    assert r0_oracle.query("lab_min", 1, 4, 3) is None


def test_dims_validation():
    with pytest.raises(ValueError):
        RelationDims(0, 1, 0)
    with pytest.raises(ValueError):
        RelationDims(2, 2, 5)


@given(relations(), st.data())
def test_definitional_identities(rel, data):
    pairs, n, sigma = rel
    r = NaiveRelation(pairs, n, sigma)
    a = data.draw(st.integers(1, sigma))
    x = data.draw(st.integers(1, n))
    y = data.draw(st.integers(x, n))
    z = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n * sigma + 1))
    assert r.rel_rnk(a, x) == r.rel_num(1, a, 1, x)
    assert r.lab_min(a, x, y) == r.lab_sel(a, 1, x, y)
    sel = r.rel_sel_obj_fst(a, a, x, j)
    assert r.obj_sel_one(a, x, j) == (sel.object if sel else None)
    assert r.lab_rnk_one(a, x) == r.rel_num(1, a, x, x)
    assert r.rel_rnk_lab_fst(a, x, y, z) == r.rel_num(1, a - 1, x, y) + r.rel_num(a, a, x, z)


@given(relations(), st.data())
def test_selection_orders(rel, data):
    pairs, n, sigma = rel
    r = NaiveRelation(pairs, n, sigma)
    a = data.draw(st.integers(1, sigma))
    x = data.draw(st.integers(1, n))
    y = data.draw(st.integers(x, n))
    label_major = sorted(p for p in pairs if p.label >= a and x <= p.object <= y)
    got = [r.rel_sel_lab_fst(a, j, x, y) for j in range(1, len(label_major) + 2)]
    assert got == label_major + [None]
    object_major = sorted((p for p in pairs if p.label >= a and p.object >= x),
                          key=lambda p: (p.object, p.label))
    got = [r.rel_sel_obj_fst(a, sigma, x, j) for j in range(1, len(object_major) + 2)]
    assert got == object_major + [None]
