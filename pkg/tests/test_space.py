import math

import pytest
from hypothesis import given, strategies as st

from binrel.brwt import Brwt
from binrel.core import RelationDims
from binrel.rel_wt import BinRelWt
from binrel.space import (EXACT_LIMIT, brwt_ideal_size, entropy, report, wt_payload_formula,
                          zero_order)
from conftest import R0_N, R0_PAIRS, R0_S, R0_SIGMA, relations


def test_entropy_r0():
    assert math.comb(20, 8) == 125970
    assert entropy(RelationDims(5, 4, 8)) == pytest.approx(math.log2(125970))
    assert entropy(RelationDims(5, 4, 8)) == pytest.approx(16.9427, abs=1e-4)


def test_entropy_extremes():
    assert entropy(RelationDims(5, 4, 0)) == 0
    assert entropy(RelationDims(5, 4, 20)) == 0


@given(st.integers(1, 200), st.integers(1, 200), st.data())
def test_entropy_lgamma_branch_agrees_with_exact(n, sigma, data):
    t = data.draw(st.integers(0, n * sigma))
    exact = math.log2(math.comb(n * sigma, t)) if 0 < t < n * sigma else 0.0
    assert entropy(RelationDims(n, sigma, t)) == pytest.approx(exact, rel=1e-9, abs=1e-6)


def test_entropy_switches_branch_above_limit():
    n = EXACT_LIMIT // 100 + 1
    d = RelationDims(n, 100, 37)
    assert entropy(d) == pytest.approx(math.log2(math.comb(n * 100, 37)), rel=1e-9)


def test_zero_order():
    # counts 2, 2, 3, 1 over 8 symbols
    assert zero_order(R0_S) == pytest.approx(2 * 2 + 2 * 2 + 3 * math.log2(8 / 3) + 3)
    assert zero_order([7] * 9) == 0
    assert zero_order([1, 2] * 4) == pytest.approx(8)
    assert zero_order([]) == 0


def test_brwt_ideal_extremes():
    assert brwt_ideal_size(Brwt([], 5, 4)) == 10
    full = Brwt([(a, x) for a in range(1, 5) for x in range(1, 6)], 5, 4)
    assert brwt_ideal_size(full) == 10


def test_report_r0():
    wt, b = BinRelWt(R0_PAIRS, R0_N, R0_SIGMA), Brwt(R0_PAIRS, R0_N, R0_SIGMA)
    rep = report(wt.dims, R0_S, {"wt": wt, "brwt": b})
    assert rep.entropy_bits == pytest.approx(16.9427, abs=1e-4)
    assert rep.payload_bits["wt"] == wt_payload_formula(wt.dims) == 8 * 2 + 13
    assert rep.brwt_within_bound
    text, kv = rep.to_text(), rep.to_kv()
    assert "entropy_bits" in text and "entropy_bits=16.9427" in kv
    assert "brwt_ideal_bits=" in kv and "brwt_bound_bits=" in kv


def test_report_empty():
    wt = BinRelWt([], 3, 3)
    rep = report(wt.dims, [], {"wt": wt})
    assert rep.entropy_bits == 0 and rep.h0_S_bits == 0
    assert rep.brwt_ideal_bits is None


@given(relations(max_n=32, max_sigma=32))
def test_wt_payload_exact(rel):
    pairs, n, sigma = rel
    r = BinRelWt(pairs, n, sigma)
    assert r.payload_bits == len(pairs) * math.ceil(math.log2(sigma)) + n + len(pairs)
