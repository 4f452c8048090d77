import random

import pytest
from hypothesis import given, settings, strategies as st

from binrel.core import OPS, NaiveRelation, RestrictedRelation
from binrel.reductions import EDGES, ConfigurationError, edges_into, plan
from binrel.verify import exhaustive_args, random_args
from conftest import R0_N, R0_PAIRS, R0_SIGMA, random_relations


def by_name(name):
    (e,) = [e for e in EDGES if e.name == name]
    return e


def test_every_op_has_an_incoming_edge():
    assert all(edges_into(op) for op in OPS)
    assert {e.target for e in EDGES} == set(OPS)
    assert all(set(e.sources) <= set(OPS) for e in EDGES)
    assert len({e.name for e in EDGES}) == len(EDGES)


def test_r0_counts_by_inclusion_exclusion(r0_oracle):
    e = by_name("rel_num_from_rnk")
    assert e.fn(r0_oracle, 2, 3, 1, 3) == 3
    assert e.fn(r0_oracle, 2, 3, 4, 3) == 0


def test_r0_lab_min_via_min_lab_fst(r0_oracle):
    (e,) = [e for e in edges_into("lab_min") if e.sources == ("rel_min_lab_fst",)]
    assert e.fn(r0_oracle, 2, 3, 5) == 2


def test_empty_native_set_is_a_configuration_error():
    with pytest.raises(ConfigurationError):
        plan(set())
    with pytest.raises(ConfigurationError):
        plan({"rel_rnk_typo"})


@pytest.mark.parametrize("op", [op for op in OPS if op.startswith("rel_")])
def test_any_single_pair_operation_generates_the_algebra(op):
    assert set(plan({op})) == set(OPS) - {op}


@pytest.mark.parametrize("op", [op for op in OPS if not op.startswith("rel_")])
def test_label_or_object_projections_alone_are_insufficient(op):
    # projections forget which pairs sit together
    with pytest.raises(ConfigurationError):
        plan({op})


def test_r0_full_algebra_from_small_native_sets():
    r0 = NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA)
    for native in ({"rel_num", "rel_sel_lab_fst"}, {"rel_rnk", "rel_min_obj_fst"},
                   {"rel_acc"}, {"rel_sel_obj_fst", "rel_rnk_obj_fst"}):
        r = RestrictedRelation(r0, native)
        for op in OPS:
            for args in exhaustive_args(op, r0):
                assert r.query(op, *args) == r0.query(op, *args), (native, op, args)


def _acyclic(chosen, native):
    done = set(native)
    pending = dict(chosen)
    while pending:
        ready = [op for op, e in pending.items() if set(e.sources) <= done]
        if not ready:
            return False
        for op in ready:
            done.add(op)
            del pending[op]
    return True


@settings(max_examples=100)
@given(st.sets(st.sampled_from(sorted(OPS)), min_size=1, max_size=6))
def test_plans_are_acyclic_and_complete(native):
    try:
        chosen = plan(native)
    except ConfigurationError:
        return
    assert set(chosen) | set(native) == set(OPS)
    assert not set(chosen) & set(native)
    assert _acyclic(chosen, native)


@pytest.mark.parametrize("e", EDGES, ids=lambda e: e.name)
def test_edge_in_isolation(e):
    # the edge's sources are answered by the oracle; only the edge itself is on trial
    rng = random.Random(hash(e.name) & 0xFFFF)
    for pairs, n, sigma in random_relations(25, seed=len(e.name), max_n=10, max_sigma=10):
        o = NaiveRelation(pairs, n, sigma)
        for _ in range(20):
            args = random_args(e.target, o, rng)
            want = o.query(e.target, *args)
            got = e.fn(o, *args)
            if OPS[e.target][1] in ("pairs", "labels", "objects"):
                got = sorted(got)
            assert got == want, (e.name, pairs, n, sigma, args)
