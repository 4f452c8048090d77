import random

from binrel.build import STANDARD_CONFIGS, build
from binrel.core import OPS, NaiveRelation
from binrel.rel_wt import BinRelWt
from binrel.verify import (ORDINAL_CONTEXT, exhaustive_args, random_args, random_relation,
                           run_exhaustive, run_rounds)
from conftest import R0_N, R0_PAIRS, R0_SIGMA


def r0_structures():
    return {c.name: build(c, R0_PAIRS, R0_N, R0_SIGMA) for c in STANDARD_CONFIGS}


def test_random_relation_bounds():
    rng = random.Random(0)
    for _ in range(50):
        pairs, n, sigma = random_relation(rng)
        assert 1 <= n <= 64 and 1 <= sigma <= 64
        assert len(set(pairs)) == len(pairs)
        assert all(1 <= a <= sigma and 1 <= x <= n for a, x in pairs)


def test_every_ordinal_op_has_a_context():
    assert set(ORDINAL_CONTEXT) == {op for op, (kinds, _) in OPS.items() if "J" in kinds}


def test_exhaustive_args_cover_the_grid():
    o = NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)
    assert len(list(exhaustive_args("rel_num", o))) == 4 * 4 * 5 * 5
    sels = list(exhaustive_args("obj_sel_one", o))
    # every (label, object) start, ordinals one past the available count
    assert {(a, x) for a, x, _ in sels} == {(a, x) for a in range(1, 5) for x in range(1, 6)}
    assert all(o.obj_sel_one(a, x, j) is None for a, x, j in sels
               if j == o.obj_num(a, a, x, R0_N) + 1)


def test_random_args_are_valid_queries():
    rng = random.Random(1)
    o = NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)
    for op in OPS:
        for _ in range(50):
            o.query(op, *random_args(op, o, rng))


def test_r0_everything_passes():
    o = NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)
    result = run_exhaustive(r0_structures(), o)
    assert result.ok
    assert set(result.passes) == set(OPS)


def test_zero_rounds_pass_trivially():
    result = run_rounds(r0_structures(), NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA), 0, seed=1)
    assert result.ok and sum(result.passes.values()) == 0


def test_fault_injection_is_reported():
    o = NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)
    bad = BinRelWt(R0_PAIRS, R0_N, R0_SIGMA)
    # swap two labels in the bottom level of the wavelet tree
    level = bad.W.levels[-1]
    bits = level.tolist()
    bits[0] ^= 1
    bad.W.levels[-1] = type(level)(bits)
    bad.W._layout()
    result = run_rounds({"wt": bad}, o, rounds=30, seed=0)
    assert not result.ok
    line = result.mismatch.repro()
    assert line.startswith("mismatch structure=wt n=5 sigma=4 pairs=1:2,1:5,")
    assert f"op={result.mismatch.op}" in line
