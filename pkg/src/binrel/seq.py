"""Sequence structures: binary wavelet tree, small-alphabet sequences, RMQ.

Symbols are integers in 1..sigma and positions are 1-based throughout.
"""

from __future__ import annotations

import struct
from typing import Iterable, Optional, Sequence

import numpy as np

from .bitvec import BitVector


def ceil_log(base: int, value: int) -> int:
    """Smallest h with base**h >= value (0 for value <= 1)."""
    h, reach = 0, 1
    while reach < value:
        reach *= base
        h += 1
    return h


# ---------------------------------------------------------------------------
# Binary wavelet tree
# ---------------------------------------------------------------------------


class WTNode:
    """Node over alphabet range [lo, hi].

    Internal nodes own the slice [offset+1, offset+size] of their level
    bitvector. Leaves carry no bits; ``size`` is the symbol frequency.
    """

    __slots__ = (
        "lo", "hi", "mid", "depth", "offset", "size", "level", "r1base",
        "ones", "left", "right", "parent", "is_right",
    )

    def __init__(self, lo: int, hi: int, depth: int, parent=None, is_right=False):
        self.lo, self.hi, self.depth = lo, hi, depth
        self.mid = (lo + hi) // 2
        self.parent, self.is_right = parent, is_right
        self.left = self.right = None
        self.offset = self.size = self.r1base = self.ones = 0
        self.level = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def rank1(self, i: int) -> int:
        return self.level.rank1(self.offset + i) - self.r1base

    def rank0(self, i: int) -> int:
        return i - self.level.rank1(self.offset + i) + self.r1base

    def select1(self, j: int) -> Optional[int]:
        if j < 1 or j > self.ones:
            return None
        return self.level.select1(self.r1base + j) - self.offset

    def select0(self, j: int) -> Optional[int]:
        if j < 1 or j > self.size - self.ones:
            return None
        return self.level.select0(self.offset - self.r1base + j) - self.offset

    def bit(self, i: int) -> int:
        return self.level[self.offset + i]

    def __repr__(self) -> str:
        return f"WTNode([{self.lo},{self.hi}], size={self.size})"


class WaveletTree:
    """Balanced wavelet tree with one full-length bitvector per level.

    Node [a,b] splits at m = (a+b)//2 into [a,m] and [m+1,b]. Leaves that end
    above the bottom level keep occupying their slots in deeper levels
    (padded with zeros), so every level is exactly ``length`` bits long and
    a node's offset is the number of symbols smaller than its range.

    ``visits`` counts nodes entered top-down. Upward walks retrace nodes
    already entered and are not counted again.
    """

    def __init__(self, symbols: Iterable[int], sigma: int):
        seq = np.asarray(list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
                         dtype=np.int64)
        if sigma < 1:
            raise ValueError("alphabet size must be >= 1")
        if seq.size and (seq.min() < 1 or seq.max() > sigma):
            raise ValueError(f"symbols must lie in [1, {sigma}]")
        self.sigma = sigma
        self.length = int(seq.size)
        self.height = ceil_log(2, sigma)
        self._make_shape()
        self.levels = self._build_levels(seq)
        self._layout()

    @classmethod
    def from_levels(cls, sigma: int, length: int, levels: list[BitVector]) -> "WaveletTree":
        self = cls.__new__(cls)
        self.sigma, self.length = sigma, length
        self.height = ceil_log(2, sigma)
        if len(levels) != self.height or any(len(b) != length for b in levels):
            raise ValueError("level bitvectors do not match the tree shape")
        self._make_shape()
        self.levels = levels
        self._layout()
        return self

    def _make_shape(self) -> None:
        self.visits = 0
        self.nodes: list[WTNode] = []
        self.leaves: list[Optional[WTNode]] = [None] * (self.sigma + 1)
        self.root = self._grow(1, self.sigma, 0, None, False)

    def _grow(self, lo, hi, depth, parent, is_right) -> WTNode:
        node = WTNode(lo, hi, depth, parent, is_right)
        self.nodes.append(node)
        if lo == hi:
            self.leaves[lo] = node
        else:
            node.left = self._grow(lo, node.mid, depth + 1, node, False)
            node.right = self._grow(node.mid + 1, hi, depth + 1, node, True)
        return node

    def _build_levels(self, seq: np.ndarray) -> list[BitVector]:
        h, sigma = self.height, self.sigma
        anc_lo = np.zeros((h + 1, sigma + 1), dtype=np.int64)
        bit = np.zeros((h + 1, sigma + 1), dtype=np.uint8)
        for node in self.nodes:
            if node.is_leaf:
                anc_lo[node.depth:, node.lo] = node.lo
            else:
                anc_lo[node.depth, node.lo:node.hi + 1] = node.lo
                bit[node.depth, node.mid + 1:node.hi + 1] = 1
        levels = []
        for d in range(h):
            order = np.argsort(anc_lo[d][seq], kind="stable")
            levels.append(BitVector(bit[d][seq[order]]))
        return levels

    def _layout(self) -> None:
        self.root.offset, self.root.size = 0, self.length
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            lvl = self.levels[node.depth]
            node.level = lvl
            node.r1base = lvl.rank1(node.offset)
            node.ones = lvl.rank1(node.offset + node.size) - node.r1base
            zeros = node.size - node.ones
            node.left.offset, node.left.size = node.offset, zeros
            node.right.offset, node.right.size = node.offset + zeros, node.ones
            stack += (node.left, node.right)

    def _check_symbol(self, a: int) -> None:
        if not 1 <= a <= self.sigma:
            raise ValueError(f"symbol {a} outside alphabet [1, {self.sigma}]")

    def _check_pos(self, i: int, lo: int = 0) -> None:
        if not lo <= i <= self.length:
            raise IndexError(f"position {i} outside [{lo}, {self.length}]")

    # -- sequence queries ----------------------------------------------

    def access(self, i: int) -> int:
        self._check_pos(i, 1)
        node = self.root
        while node.left is not None:
            self.visits += 1
            if node.bit(i):
                i = node.rank1(i)
                node = node.right
            else:
                i = node.rank0(i)
                node = node.left
        self.visits += 1
        return node.lo

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def rank(self, a: int, i: int) -> int:
        """Occurrences of a in S[1..i]."""
        self._check_symbol(a)
        self._check_pos(i)
        node = self.root
        while node.left is not None:
            self.visits += 1
            if a <= node.mid:
                i = node.rank0(i)
                node = node.left
            else:
                i = node.rank1(i)
                node = node.right
        self.visits += 1
        return i

    def select(self, a: int, j: int) -> Optional[int]:
        """Position of the j-th a, or None."""
        self._check_symbol(a)
        if j < 1:
            raise ValueError("select ordinal must be >= 1")
        leaf = self.leaves[a]
        if j > leaf.size:
            return None
        return self.map_up(leaf, j)

    def rank_le(self, a: int, i: int) -> int:
        """Number of positions p <= i with S[p] <= a."""
        if a < 1 or i <= 0:
            return 0
        if a >= self.sigma:
            return i
        node, c = self.root, 0
        while node.left is not None:
            self.visits += 1
            if a <= node.mid:
                i = node.rank0(i)
                node = node.left
            else:
                c += node.rank0(i)
                i = node.rank1(i)
                node = node.right
        self.visits += 1
        return c + i

    def count_range(self, a: int, b: int, p: int, q: int) -> int:
        """Positions in S[p..q] holding a symbol in [a, b]."""
        if a > b or p > q:
            return 0
        return (self.rank_le(b, q) - self.rank_le(a - 1, q)
                - self.rank_le(b, p - 1) + self.rank_le(a - 1, p - 1))

    # -- node-level navigation -----------------------------------------

    def cover(self, alpha: int, beta: int) -> list[WTNode]:
        """Maximal nodes whose ranges partition [alpha, beta], left to right."""
        if not 1 <= alpha <= beta <= self.sigma:
            raise ValueError(f"invalid symbol range [{alpha}, {beta}]")
        out: list[WTNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.hi < alpha or node.lo > beta:
                continue
            if alpha <= node.lo and node.hi <= beta:
                out.append(node)
            else:
                stack += (node.right, node.left)
        return out

    def map_down(self, node: WTNode, p: int) -> int:
        """Root prefix length p -> prefix length inside ``node``."""
        path = []
        v = node
        while v.parent is not None:
            path.append(v)
            v = v.parent
        for child in reversed(path):
            self.visits += 1
            par = child.parent
            p = par.rank1(p) if child.is_right else par.rank0(p)
        return p

    def map_up(self, node: WTNode, p: int) -> int:
        """Position p inside ``node`` -> root position."""
        if not 1 <= p <= node.size:
            raise IndexError(f"position {p} outside node of size {node.size}")
        while node.parent is not None:
            par = node.parent
            p = par.select1(p) if node.is_right else par.select0(p)
            node = par
        return p

    # -- accounting / io -----------------------------------------------

    def __len__(self) -> int:
        return self.length

    def tolist(self) -> list[int]:
        return [self.access(i) for i in range(1, self.length + 1)]

    @property
    def payload_bits(self) -> int:
        return sum(len(b) for b in self.levels)

    @property
    def directory_bits(self) -> int:
        return sum(b.directory_bits for b in self.levels)

    def to_bytes(self) -> bytes:
        out = [struct.pack("<QQ", self.sigma, self.length)]
        out += [b.to_bytes() for b in self.levels]
        return b"".join(out)

    @classmethod
    def from_buffer(cls, buf, offset: int = 0) -> tuple["WaveletTree", int]:
        sigma, length = struct.unpack_from("<QQ", buf, offset)
        offset += 16
        levels = []
        for _ in range(ceil_log(2, sigma)):
            bv, offset = BitVector.from_buffer(buf, offset)
            levels.append(bv)
        return cls.from_levels(sigma, length, levels), offset


# ---------------------------------------------------------------------------
# Small-alphabet sequences
# ---------------------------------------------------------------------------


class SmallAlphabetSequence:
    """Sequence over [1, mu] with rank/select per symbol, rank_le, and bands.

    A band B_{k,l} marks positions whose symbol lies in [k, l]. With
    ``bands="all"`` every band is held as its own bitvector, so band rank and
    select are direct. With ``bands="prefix"`` only the B_{<=k} bitvectors
    exist; band rank is a difference of two of them and band select is a
    binary search over that difference.
    """

    def __init__(self, symbols: Sequence[int], mu: int, bands: str = "all"):
        if bands not in ("all", "prefix"):
            raise ValueError("bands must be 'all' or 'prefix'")
        arr = np.asarray(symbols, dtype=np.int64)
        if arr.size and (arr.min() < 1 or arr.max() > mu):
            raise ValueError(f"symbols must lie in [1, {mu}]")
        self.mu = mu
        self.mode = bands
        self.length = int(arr.size)
        self.payload = arr.tolist()
        self.probes = 0
        self._stride = mu + 1
        self._band: list[Optional[BitVector]] = [None] * (self._stride * self._stride)
        if bands == "all":
            for k in range(1, mu + 1):
                for l in range(k, mu + 1):
                    self._band[k * self._stride + l] = BitVector((arr >= k) & (arr <= l))
        else:
            for l in range(1, mu):
                self._band[1 * self._stride + l] = BitVector(arr <= l)

    def access(self, i: int) -> int:
        return self.payload[i - 1]

    def __len__(self) -> int:
        return self.length

    def rank_le(self, k: int, i: int) -> int:
        if k <= 0 or i <= 0:
            return 0
        if k >= self.mu:
            return i
        return self._band[self._stride + k].rank1(i)

    def band_rank(self, k: int, l: int, i: int) -> int:
        """Positions p <= i with k <= S[p] <= l."""
        if k > l or i <= 0:
            return 0
        if self.mode == "all":
            return self._band[k * self._stride + l].rank1(i)
        return self.rank_le(l, i) - self.rank_le(k - 1, i)

    def rank(self, k: int, i: int) -> int:
        return self.band_rank(k, k, i)

    def band_select(self, k: int, l: int, j: int) -> Optional[int]:
        """Position of the j-th symbol in [k, l], or None."""
        if j < 1 or k > l:
            return None
        if self.mode == "all":
            return self._band[k * self._stride + l].select1(j)
        if j > self.band_rank(k, l, self.length):
            return None
        lo, hi = 1, self.length
        while lo < hi:
            mid = (lo + hi) // 2
            if self.band_rank(k, l, mid) >= j:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def select(self, k: int, j: int) -> Optional[int]:
        return self.band_select(k, k, j)

    def band_select_next(self, k: int, l: int, p: int) -> Optional[int]:
        """Smallest q > p with S[q] in [k, l], or None."""
        if not 1 <= k <= l <= self.mu:
            raise ValueError(f"invalid band [{k}, {l}] for alphabet [1, {self.mu}]")
        self.probes += 1
        return self.band_select(k, l, self.band_rank(k, l, p) + 1)

    def distinct_in_range(self, k: int, l: int, p: int, q: int) -> list[int]:
        """Distinct symbols of [k, l] present in S[p..q], ascending.

        Each probe either finds a new symbol or closes a sub-band, so the
        probe count is at most 2 * len(result) + 1.
        """
        out: list[int] = []
        if p > q:
            return out
        stack = [(k, l)]
        while stack:
            a, b = stack.pop()
            if a > b:
                continue
            hit = self.band_select_next(a, b, p - 1)
            if hit is None or hit > q:
                continue
            c = self.payload[hit - 1]
            out.append(c)
            stack.append((c + 1, b))
            stack.append((a, c - 1))
        out.sort()
        return out

    def bitvectors(self) -> list[BitVector]:
        return [b for b in self._band if b is not None]


# ---------------------------------------------------------------------------
# Range minimum queries
# ---------------------------------------------------------------------------


class SparseTableRMQ:
    """Leftmost-minimum position over a fixed integer sequence."""

    def __init__(self, values: Sequence[int]):
        vals = np.asarray(values, dtype=np.int64)
        self.length = int(vals.size)
        self.values = vals.tolist()
        table = []
        if self.length:
            cur = np.arange(self.length, dtype=np.int64)
            table.append(cur)
            span = 1
            while 2 * span <= self.length:
                left, right = cur[:-span], cur[span:]
                cur = np.where(vals[right] < vals[left], right, left)
                table.append(cur)
                span *= 2
        self._table = [t.tolist() for t in table]

    def query(self, i: int, j: int) -> int:
        if not 1 <= i <= j <= self.length:
            raise ValueError(f"invalid rmq range [{i}, {j}] for length {self.length}")
        k = (j - i + 1).bit_length() - 1
        row = self._table[k]
        a, b = row[i - 1], row[j - (1 << k)]
        return (b if self.values[b] < self.values[a] else a) + 1

    @property
    def table_entries(self) -> int:
        return sum(len(r) for r in self._table)
