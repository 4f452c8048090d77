import struct

import pytest
from hypothesis import given

from binrel.build import STANDARD_CONFIGS, BuildConfig, build
from binrel.core import NaiveRelation
from binrel.serialize import HEADER, MAGIC, VERSION, FormatError, dumps, load, loads, save, tag_of
from conftest import R0_N, R0_PAIRS, R0_SIGMA, assert_matches_oracle, relations

CONFIGS = list(STANDARD_CONFIGS) + [
    BuildConfig("str", sequence="gwt", arity=4),
    BuildConfig("gwt", arity=5, bands="prefix"),
    BuildConfig("gwt", arity=300),
]


@pytest.mark.parametrize("config", CONFIGS, ids=lambda c: f"{c.name}-{c.bands}")
def test_r0_roundtrip(config, tmp_path):
    r = build(config, R0_PAIRS, R0_N, R0_SIGMA)
    path = tmp_path / "r0.brel"
    save(r, path)
    back = load(path)
    assert type(back) is type(r)
    assert back.dims == r.dims
    assert dumps(back) == dumps(r)
    assert_matches_oracle(back, NaiveRelation(R0_PAIRS, R0_N, R0_SIGMA), exhaustive=True)


def test_header_layout():
    data = dumps(build("wt", R0_PAIRS, R0_N, R0_SIGMA))
    magic, version, tag, n, sigma, t = HEADER.unpack_from(data)
    assert (magic, version, tag, n, sigma, t) == (MAGIC, VERSION, 2, 5, 4, 8)
    assert data[:4] == b"BREL"
    assert HEADER.size == 4 + 2 + 1 + 24


@pytest.mark.parametrize("repr_", ["str", "wt", "gwt", "brwt"])
def test_tags(repr_):
    r = build(repr_, R0_PAIRS, R0_N, R0_SIGMA)
    assert tag_of(r) == repr_
    assert dumps(r)[6] == {"str": 1, "wt": 2, "gwt": 3, "brwt": 4}[repr_]


def test_rejects_bad_input():
    good = dumps(build("brwt", R0_PAIRS, R0_N, R0_SIGMA))
    with pytest.raises(FormatError):
        loads(b"XXXX" + good[4:])
    with pytest.raises(FormatError):
        loads(good[:4] + struct.pack("<H", 99) + good[6:])
    with pytest.raises(FormatError):
        loads(good[:6] + b"\x09" + good[7:])
    with pytest.raises(FormatError):
        loads(good[:-3])
    with pytest.raises(FormatError):
        loads(good + b"\x00")
    with pytest.raises(FormatError):
        loads(b"BR")


@given(relations())
def test_roundtrip_all_configs(rel):
    pairs, n, sigma = rel
    for config in CONFIGS:
        r = build(config, pairs, n, sigma)
        back = loads(dumps(r))
        assert back.pairs() == r.pairs()
        assert dumps(back) == dumps(r)
