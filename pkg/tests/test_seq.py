import pytest
from hypothesis import given, strategies as st

from binrel.rel_gwt import GeneralizedWaveletTree
from binrel.seq import SmallAlphabetSequence, SparseTableRMQ, WaveletTree, ceil_log
from conftest import SAMPLE_SYMBOLS, R0_S, sym

SMALL = R0_S  # a sequence over [1, 4]


@pytest.fixture(scope="module")
def sample():
    return WaveletTree(SAMPLE_SYMBOLS, 8)


def test_ceil_log():
    assert [ceil_log(2, s) for s in (1, 2, 3, 4, 5, 8, 9, 1024)] == [0, 1, 2, 2, 3, 3, 4, 10]
    assert [ceil_log(16, s) for s in (1, 16, 17, 256, 257)] == [0, 1, 2, 2, 3]


def test_wt_access(sample):
    assert sample.access(1) == sym("E")
    assert sample.access(5) == sym("A")
    assert WaveletTree([1], 8).access(1) == 1
    assert sample.tolist() == SAMPLE_SYMBOLS


def test_wt_rank(sample):
    assert sample.rank(sym("E"), 8) == 3
    assert sample.rank(sym("C"), 0) == 0
    with pytest.raises(ValueError):
        sample.rank(9, 3)


def test_wt_select(sample):
    assert sample.select(sym("C"), 2) == 11
    assert sample.select(sym("F"), 2) is None
    assert sample.select(sym("E"), 1) == 1


def test_wt_rank_le(sample):
    assert sample.rank_le(sym("D"), 15) == 7
    assert sample.rank_le(sym("H"), 15) == 15
    assert sample.rank_le(sym("A"), 4) == 0


def test_wt_cover(sample):
    assert [(v.lo, v.hi) for v in sample.cover(1, 8)] == [(1, 8)]
    assert [(v.lo, v.hi) for v in sample.cover(2, 7)] == [(2, 2), (3, 4), (5, 6), (7, 7)]
    assert [(v.lo, v.hi) for v in sample.cover(3, 3)] == [(3, 3)]


def test_wt_maps(sample):
    assert sample.map_up(sample.leaves[sym("E")], 2) == 7
    assert all(sample.map_down(sample.root, p) == p for p in range(16))
    assert sample.map_down(sample.leaves[sym("C")], 15) == 3


def test_wt_payload_is_full_levels(sample):
    assert sample.payload_bits == 15 * 3


@given(st.integers(1, 40).flatmap(
    lambda s: st.tuples(st.just(s), st.lists(st.integers(1, s), max_size=120))))
def test_wt_matches_scan(case):
    sigma, seq = case
    w = WaveletTree(seq, sigma)
    assert w.tolist() == seq
    for a in range(1, sigma + 1):
        pos = [i + 1 for i, c in enumerate(seq) if c == a]
        assert [w.select(a, j) for j in range(1, len(pos) + 1)] == pos
        for i in range(0, len(seq) + 1, 7):
            assert w.rank(a, i) == seq[:i].count(a)
            assert w.rank_le(a, i) == sum(c <= a for c in seq[:i])


@given(st.integers(1, 64), st.data())
def test_wt_cover_partitions_range(sigma, data):
    w = WaveletTree([], sigma)
    a = data.draw(st.integers(1, sigma))
    b = data.draw(st.integers(a, sigma))
    nodes = w.cover(a, b)
    flat = [s for v in nodes for s in range(v.lo, v.hi + 1)]
    assert flat == list(range(a, b + 1))
    assert len(nodes) <= 2 * ceil_log(2, b - a + 1) + 2


def test_saseq_rank_le():
    s = SmallAlphabetSequence(SMALL, 4)
    assert s.rank_le(2, 8) == 4
    assert all(s.rank_le(4, i) == i for i in range(9))
    assert all(s.rank_le(k, 0) == 0 for k in range(1, 5))


@pytest.mark.parametrize("bands", ["all", "prefix"])
def test_saseq_band_select_next(bands):
    s = SmallAlphabetSequence(SMALL, 4, bands)
    assert s.band_select_next(3, 4, 4) == 7
    assert all(s.band_select_next(1, 4, p) == p + 1 for p in range(8))
    assert s.band_select_next(4, 4, 8) is None


@pytest.mark.parametrize("bands", ["all", "prefix"])
def test_saseq_distinct_in_range(bands):
    s = SmallAlphabetSequence(SMALL, 4, bands)
    assert s.distinct_in_range(1, 4, 1, 8) == [1, 2, 3, 4]
    assert s.distinct_in_range(1, 4, 5, 4) == []
    assert s.distinct_in_range(2, 4, 3, 6) == [2, 3]


@given(st.integers(2, 9).flatmap(lambda mu: st.tuples(
    st.just(mu), st.lists(st.integers(1, mu), max_size=80))), st.sampled_from(["all", "prefix"]),
    st.data())
def test_saseq_distinct_probe_bound(case, bands, data):
    mu, seq = case
    s = SmallAlphabetSequence(seq, mu, bands)
    k = data.draw(st.integers(1, mu))
    l = data.draw(st.integers(k, mu))
    p = data.draw(st.integers(1, len(seq) + 1))
    q = data.draw(st.integers(p - 1, len(seq)))
    s.probes = 0
    got = s.distinct_in_range(k, l, p, q)
    assert got == sorted({c for c in seq[p - 1:q] if k <= c <= l})
    assert s.probes <= 2 * len(got) + 1


def test_rmq_examples():
    r = SparseTableRMQ(SMALL)
    assert r.query(3, 7) == 3
    assert all(r.query(i, i) == i for i in range(1, 9))
    assert r.query(4, 8) == 6


def test_rmq_exhaustive_short_sequences():
    import random

    rng = random.Random(5)
    for length in (1, 2, 3, 17, 64, 256):
        vals = [rng.randint(1, 6) for _ in range(length)]
        r = SparseTableRMQ(vals)
        for i in range(1, length + 1):
            best = i
            for j in range(i, length + 1):
                if vals[j - 1] < vals[best - 1]:
                    best = j
                assert r.query(i, j) == best


@pytest.mark.parametrize("mu", [2, 3, 4, 8, 16])
def test_gwt_matches_wt_sequence_queries(mu):
    g = GeneralizedWaveletTree(SAMPLE_SYMBOLS, 8, mu=mu)
    w = WaveletTree(SAMPLE_SYMBOLS, 8)
    assert g.tolist() == SAMPLE_SYMBOLS
    for a in range(1, 9):
        for i in range(16):
            assert g.rank(a, i) == w.rank(a, i)
            assert g.rank_le(a, i) == w.rank_le(a, i)
        for j in range(1, 5):
            assert g.select(a, j) == w.select(a, j)


@given(st.integers(2, 17), st.integers(1, 80))
def test_gwt_children_partition_ranges(mu, sigma):
    g = GeneralizedWaveletTree([], sigma, mu=mu)
    assert g.height == ceil_log(mu, sigma)
    for v in g.bfs():
        if v.is_leaf:
            assert v.lo == v.hi
            continue
        assert v.children[0].lo == v.lo and v.children[-1].hi == v.hi
        sizes = [c.hi - c.lo + 1 for c in v.children]
        assert max(sizes) - min(sizes) <= 1 and sizes == sorted(sizes, reverse=True)
        for c in v.children:
            assert v.child_start(c.k) == c.lo
            assert all(v.child_index(a) == c.k for a in range(c.lo, c.hi + 1))


def test_gwt_binary_arity_splits_like_wt():
    g = GeneralizedWaveletTree([], 11, mu=2)
    w = WaveletTree([], 11)
    gs = sorted((v.lo, v.hi) for v in g.bfs())
    stack, ws = [w.root], []
    while stack:
        v = stack.pop()
        ws.append((v.lo, v.hi))
        if v.left is not None:
            stack += [v.left, v.right]
    assert gs == sorted(ws)
