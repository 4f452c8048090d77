"""Versioned little-endian container for any representation.

Header: magic ``BREL``, u16 version, u8 representation tag, then n, sigma
and t as u64. The payload follows the representation's own layout; rank,
select and RMQ directories are rebuilt on load.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .bitvec import BitVector
from .brwt import Brwt
from .core import RelationDims
from .rel_gwt import BinRelGwt, GeneralizedWaveletTree
from .rel_str import BinRelStr
from .rel_wt import BinRelWt
from .seq import WaveletTree

MAGIC = b"BREL"
VERSION = 1
HEADER = struct.Struct("<4sHB3Q")
TAGS = {"str": 1, "wt": 2, "gwt": 3, "brwt": 4}
NAMES = {v: k for k, v in TAGS.items()}
SEQ_KINDS = {"wt": 1, "gwt": 2}
BAND_MODES = {"all": 0, "prefix": 1}


class FormatError(ValueError):
    """Malformed, truncated or unsupported serialized relation."""


def tag_of(rel) -> str:
    # BinRelStr first: the wavelet layouts share its base class
    if isinstance(rel, BinRelStr):
        return "str"
    if isinstance(rel, BinRelWt):
        return "wt"
    if isinstance(rel, BinRelGwt):
        return "gwt"
    if isinstance(rel, Brwt):
        return "brwt"
    raise TypeError(f"cannot serialize {type(rel).__name__}")


# -- multiary wavelet tree ---------------------------------------------------


def _gwt_bytes(G: GeneralizedWaveletTree) -> bytes:
    dtype = "<u1" if G.mu <= 255 else "<u2"
    out = [struct.pack("<QQQB", G.sigma, G.length, G.mu, BAND_MODES[G.bands])]
    for v in G.internal_nodes():
        out.append(np.asarray(v.seq.payload, dtype=dtype).tobytes())
    return b"".join(out)


def _gwt_from(buf, off: int) -> tuple[GeneralizedWaveletTree, int]:
    sigma, length, mu, mode = struct.unpack_from("<QQQB", buf, off)
    off += 25
    if mode not in BAND_MODES.values() or mu < 2:
        raise FormatError("bad multiary tree header")
    bands = "all" if mode == 0 else "prefix"
    dtype = np.dtype("<u1" if mu <= 255 else "<u2")
    # node sizes follow from the parents' payloads, so read level by level
    G = GeneralizedWaveletTree.__new__(GeneralizedWaveletTree)
    G._shape(sigma, length, mu, bands)
    G.root.size = length
    for v in G.internal_nodes():
        count = v.size
        if off + count * dtype.itemsize > len(buf):
            raise FormatError("truncated node payload")
        idx = np.frombuffer(buf, dtype=dtype, count=count, offset=off).astype(np.int64)
        off += count * dtype.itemsize
        if idx.size and (idx.min() < 1 or idx.max() > v.arity):
            raise FormatError("child index out of range")
        G._install(v, idx)
        for c in v.children:
            c.size = v.seq.rank(c.k, v.size)
    return G, off


# -- whole relations -----------------------------------------------------------


def dumps(rel) -> bytes:
    tag = tag_of(rel)
    d = rel.dims
    out = [HEADER.pack(MAGIC, VERSION, TAGS[tag], d.n, d.sigma, d.t)]
    if tag == "brwt":
        out.append(rel.row_unary.to_bytes())
        for v in rel.internal_nodes():
            out += [v.BL.to_bytes(), v.BR.to_bytes()]
        return b"".join(out)
    out.append(rel.B.to_bytes())
    if tag == "str":
        kind = rel.sequence_kind
        out.append(struct.pack("<B", SEQ_KINDS[kind]))
        out.append(rel.S.to_bytes() if kind == "wt" else _gwt_bytes(rel.S))
    elif tag == "wt":
        out.append(rel.S.to_bytes())
    else:
        out.append(_gwt_bytes(rel.S))
    return b"".join(out)


def loads(buf: bytes):
    try:
        return _loads(bytes(buf))
    except (struct.error, IndexError) as exc:
        raise FormatError(f"truncated or corrupt relation: {exc}") from exc


def _loads(buf: bytes):
    if len(buf) < HEADER.size:
        raise FormatError("file too short for header")
    magic, version, tag, n, sigma, t = HEADER.unpack_from(buf, 0)
    if magic != MAGIC:
        raise FormatError("bad magic; not a serialized relation")
    if version != VERSION:
        raise FormatError(f"unsupported format version {version}")
    if tag not in NAMES:
        raise FormatError(f"unknown representation tag {tag}")
    dims = RelationDims(n, sigma, t)
    off = HEADER.size
    name = NAMES[tag]
    try:
        if name == "brwt":
            row_unary, off = BitVector.from_buffer(buf, off)
            shell = Brwt.__new__(Brwt)
            shell._shape(dims)
            bits = []
            for _ in shell.internal_nodes():
                bl, off = BitVector.from_buffer(buf, off)
                br, off = BitVector.from_buffer(buf, off)
                bits.append((bl, br))
            rel = Brwt.from_parts(dims, row_unary, bits)
        else:
            B, off = BitVector.from_buffer(buf, off)
            if name == "str":
                (kind,) = struct.unpack_from("<B", buf, off)
                off += 1
                if kind == SEQ_KINDS["wt"]:
                    S, off = WaveletTree.from_buffer(buf, off)
                    rel = BinRelStr.from_parts(dims, B, S, sequence="wt")
                elif kind == SEQ_KINDS["gwt"]:
                    S, off = _gwt_from(buf, off)
                    rel = BinRelStr.from_parts(dims, B, S, sequence="gwt")
                else:
                    raise FormatError(f"unknown sequence kind {kind}")
            elif name == "wt":
                S, off = WaveletTree.from_buffer(buf, off)
                rel = BinRelWt.from_parts(dims, B, S)
            else:
                S, off = _gwt_from(buf, off)
                rel = BinRelGwt.from_parts(dims, B, S)
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    if off != len(buf):
        raise FormatError(f"{len(buf) - off} trailing bytes after payload")
    return rel


def save(rel, path) -> int:
    data = dumps(rel)
    Path(path).write_bytes(data)
    return len(data)


def load(path):
    return loads(Path(path).read_bytes())
