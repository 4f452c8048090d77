"""Multiary wavelet tree over the label string, and the relation built on it.

Node [a, b] splits into min(mu, b-a+1) contiguous child ranges of
near-equal size, the first (b-a+1) mod arity of them one label larger. For
mu = 2 this is the binary tree's floor-midpoint split. Each internal node
stores its child-index sequence as a :class:`SmallAlphabetSequence` (with
band bitmaps) and a leftmost-minimum RMQ over it.

Counters: ``visits`` (nodes entered top-down), ``band_probes`` (next-in-band
lookups), ``child_searches`` / ``child_search_steps`` (binary searches over
a node's children and the probes they made).
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .bitvec import BitVector
from .core import Pair, RelationDims, normalize_pairs
from .rel_str import column_layout
from .rel_wt import SortedPositions, WaveletRelation
from .seq import SmallAlphabetSequence, SparseTableRMQ, ceil_log

DEFAULT_ARITY = 8


class GNode:
    __slots__ = (
        "lo", "hi", "depth", "parent", "k", "arity", "base", "extra",
        "children", "seq", "rmq", "size",
    )

    def __init__(self, lo, hi, depth, parent, k, mu):
        self.lo, self.hi, self.depth, self.parent, self.k = lo, hi, depth, parent, k
        width = hi - lo + 1
        self.arity = min(mu, width) if width > 1 else 0
        if self.arity:
            self.base, self.extra = divmod(width, self.arity)
        else:
            self.base = self.extra = 0
        self.children: list[GNode] = []
        self.seq: Optional[SmallAlphabetSequence] = None
        self.rmq: Optional[SparseTableRMQ] = None
        self.size = 0

    @property
    def is_leaf(self) -> bool:
        return not self.arity

    def child_index(self, a: int) -> int:
        """g(a): the child (1-based) whose range holds label a."""
        d = a - self.lo
        big = self.extra * (self.base + 1)
        if d < big:
            return d // (self.base + 1) + 1
        return self.extra + (d - big) // self.base + 1

    def child_start(self, k: int) -> int:
        """g^-1(k): first label of child k."""
        k -= 1
        if k <= self.extra:
            return self.lo + k * (self.base + 1)
        return self.lo + self.extra * (self.base + 1) + (k - self.extra) * self.base

    def child_indices(self, symbols: np.ndarray) -> np.ndarray:
        d = symbols - self.lo
        big = self.extra * (self.base + 1)
        return np.where(d < big, d // (self.base + 1) + 1,
                        self.extra + (d - big) // max(self.base, 1) + 1)

    def __repr__(self) -> str:
        return f"GNode([{self.lo},{self.hi}], arity={self.arity}, size={self.size})"


class GeneralizedWaveletTree:
    """Sequence over [1, sigma] with access/rank/select/rank_le on a mu-ary tree."""

    def __init__(self, symbols: Iterable[int], sigma: int, mu: int = DEFAULT_ARITY,
                 bands: str = "all"):
        seq = np.asarray(list(symbols) if not isinstance(symbols, np.ndarray) else symbols,
                         dtype=np.int64)
        if mu < 2:
            raise ValueError("arity must be >= 2")
        if sigma < 1:
            raise ValueError("alphabet size must be >= 1")
        if seq.size and (seq.min() < 1 or seq.max() > sigma):
            raise ValueError(f"symbols must lie in [1, {sigma}]")
        self._shape(sigma, int(seq.size), mu, bands)
        self._fill(self.root, seq)

    @classmethod
    def from_node_sequences(cls, sigma: int, length: int, mu: int, bands: str,
                            payloads: list[list[int]]) -> "GeneralizedWaveletTree":
        """Rebuild from the internal nodes' child-index sequences in BFS order."""
        self = cls.__new__(cls)
        self._shape(sigma, length, mu, bands)
        internal = [v for v in self.bfs() if not v.is_leaf]
        if len(payloads) != len(internal):
            raise ValueError("node payload count does not match the tree shape")
        self.root.size = length
        for v, payload in zip(internal, payloads):
            if len(payload) != v.size:
                raise ValueError(f"payload of {v} has length {len(payload)}")
            self._install(v, np.asarray(payload, dtype=np.int64))
            for c in v.children:
                c.size = v.seq.rank(c.k, v.size)
        return self

    def _shape(self, sigma, length, mu, bands) -> None:
        if bands not in ("all", "prefix"):
            raise ValueError("bands must be 'all' or 'prefix'")
        self.sigma, self.length, self.mu, self.bands = sigma, length, mu, bands
        self.height = ceil_log(mu, sigma)
        self.visits = self.band_probes = 0
        self.child_searches = self.child_search_steps = 0
        self.leaves: list[Optional[GNode]] = [None] * (sigma + 1)
        self.root = self._grow(1, sigma, 0, None, 0)

    def _grow(self, lo, hi, depth, parent, k) -> GNode:
        node = GNode(lo, hi, depth, parent, k, self.mu)
        if node.is_leaf:
            self.leaves[lo] = node
            return node
        for c in range(1, node.arity + 1):
            a = node.child_start(c)
            b = node.child_start(c + 1) - 1 if c < node.arity else hi
            node.children.append(self._grow(a, b, depth + 1, node, c))
        return node

    def _install(self, node: GNode, idx: np.ndarray) -> None:
        node.seq = SmallAlphabetSequence(idx, node.arity, self.bands)
        node.rmq = SparseTableRMQ(idx)

    def _fill(self, node: GNode, symbols: np.ndarray) -> None:
        node.size = int(symbols.size)
        if node.is_leaf:
            return
        idx = node.child_indices(symbols)
        self._install(node, idx)
        for c in node.children:
            self._fill(c, symbols[idx == c.k])

    def bfs(self) -> list[GNode]:
        out, i = [self.root], 0
        while i < len(out):
            out += out[i].children
            i += 1
        return out

    # -- sequence queries ----------------------------------------------

    def _check_symbol(self, a: int) -> None:
        if not 1 <= a <= self.sigma:
            raise ValueError(f"symbol {a} outside alphabet [1, {self.sigma}]")

    def _check_pos(self, i: int, lo: int = 0) -> None:
        if not lo <= i <= self.length:
            raise IndexError(f"position {i} outside [{lo}, {self.length}]")

    def __len__(self) -> int:
        return self.length

    def access(self, i: int) -> int:
        self._check_pos(i, 1)
        return self.label_at(self.root, i)

    def __getitem__(self, i: int) -> int:
        return self.access(i)

    def label_at(self, node: GNode, i: int) -> int:
        """Label at position i of ``node``'s subsequence."""
        while not node.is_leaf:
            self.visits += 1
            k = node.seq.access(i)
            i = node.seq.rank(k, i)
            node = node.children[k - 1]
        self.visits += 1
        return node.lo

    def rank(self, a: int, i: int) -> int:
        self._check_symbol(a)
        self._check_pos(i)
        node = self.root
        while not node.is_leaf:
            self.visits += 1
            k = node.child_index(a)
            i = node.seq.rank(k, i)
            node = node.children[k - 1]
        self.visits += 1
        return i

    def select(self, a: int, j: int) -> Optional[int]:
        self._check_symbol(a)
        if j < 1:
            raise ValueError("select ordinal must be >= 1")
        leaf = self.leaves[a]
        if j > leaf.size:
            return None
        return self.map_up(leaf, j)

    def rank_le(self, a: int, i: int) -> int:
        """Positions p <= i with S[p] <= a."""
        if a < 1 or i <= 0:
            return 0
        if a >= self.sigma:
            return i
        node, c = self.root, 0
        while not node.is_leaf:
            self.visits += 1
            k = node.child_index(a)
            c += node.seq.rank_le(k - 1, i)
            i = node.seq.rank(k, i)
            node = node.children[k - 1]
        self.visits += 1
        return c + i

    def map_down(self, node: GNode, p: int) -> int:
        path = []
        while node.parent is not None:
            path.append(node)
            node = node.parent
        for child in reversed(path):
            self.visits += 1
            p = child.parent.seq.rank(child.k, p)
        return p

    def map_up(self, node: GNode, p: int) -> int:
        if not 1 <= p <= node.size:
            raise IndexError(f"position {p} outside node of size {node.size}")
        while node.parent is not None:
            p = node.parent.seq.select(node.k, p)
            node = node.parent
        return p

    def tolist(self) -> list[int]:
        return [self.access(i) for i in range(1, self.length + 1)]

    # -- accounting ------------------------------------------------------

    def internal_nodes(self) -> list[GNode]:
        return [v for v in self.bfs() if not v.is_leaf]

    @property
    def payload_bits(self) -> int:
        return sum(v.size * ceil_log(2, v.arity) for v in self.internal_nodes())

    @property
    def directory_bits(self) -> int:
        total = 0
        for v in self.internal_nodes():
            for b in v.seq.bitvectors():
                total += b.payload_bits + b.directory_bits
            total += v.rmq.table_entries * max(1, ceil_log(2, v.size + 1))
        return total


class BinRelGwt(WaveletRelation):
    def __init__(self, pairs: Iterable, n: int, sigma: int, mu: int = DEFAULT_ARITY,
                 bands: str = "all", sel_obj_strategy: str = "auto"):
        pairs = normalize_pairs(pairs, n=n, sigma=sigma)
        B, labels = column_layout(pairs, n)
        self.sel_obj_strategy = sel_obj_strategy
        G = GeneralizedWaveletTree(labels, sigma, mu=mu, bands=bands)
        self._attach(RelationDims(n, sigma, len(pairs)), B, G)

    @classmethod
    def from_parts(cls, dims: RelationDims, B: BitVector, G: GeneralizedWaveletTree) -> "BinRelGwt":
        self = cls.__new__(cls)
        self._attach(dims, B, G)
        return self

    @property
    def G(self) -> GeneralizedWaveletTree:
        return self.S

    @property
    def mu(self) -> int:
        return self.S.mu

    def reset_visits(self) -> None:
        G = self.S
        G.visits = G.band_probes = G.child_searches = G.child_search_steps = 0

    # -- walks over a root interval S[lo+1..hi] ----------------------------

    def _count_less(self, a: int, lo: int, hi: int) -> int:
        if a <= 1 or hi <= lo:
            return 0
        if a > self.sigma:
            return hi - lo
        G = self.S
        node, c = G.root, 0
        while not node.is_leaf:
            G.visits += 1
            k = node.child_index(a - 1)
            s = node.seq
            c += s.rank_le(k - 1, hi) - s.rank_le(k - 1, lo)
            lo, hi = s.rank(k, lo), s.rank(k, hi)
            node = node.children[k - 1]
        G.visits += 1
        return c + hi - lo

    def _quantile(self, k: int, lo: int, hi: int) -> tuple[int, int]:
        G = self.S
        node = G.root
        while not node.is_leaf:
            G.visits += 1
            s = node.seq
            # smallest child c with at least k symbols <= c in the interval
            a, b = 1, node.arity
            while a < b:
                m = (a + b) // 2
                if s.rank_le(m, hi) - s.rank_le(m, lo) >= k:
                    b = m
                else:
                    a = m + 1
            k -= s.rank_le(a - 1, hi) - s.rank_le(a - 1, lo)
            lo, hi = s.rank(a, lo), s.rank(a, hi)
            node = node.children[a - 1]
        G.visits += 1
        return node.lo, G.map_up(node, lo + k)

    def _cover_lists(self, alpha, beta, start) -> list[SortedPositions]:
        """One list per band of fully covered sibling children."""
        G = self.S
        out = []

        def band(node, k1, k2):
            s = node.seq
            out.append(SortedPositions(
                s.band_rank(k1, k2, G.map_down(node, start)),
                s.band_rank(k1, k2, node.size),
                lambda P: s.band_rank(k1, k2, G.map_down(node, P)),
                lambda m: G.map_up(node, s.band_select(k1, k2, m)),
            ))

        def walk(node, a, b):
            ka, kb = node.child_index(a), node.child_index(b)
            if ka == kb:
                child = node.children[ka - 1]
                if a == child.lo and b == child.hi:
                    band(node, ka, ka)
                else:
                    walk(child, a, b)
                return
            left, right = node.children[ka - 1], node.children[kb - 1]
            k1 = ka if a == left.lo else ka + 1
            k2 = kb if b == right.hi else kb - 1
            if k1 > ka:
                walk(left, a, left.hi)
            if k1 <= k2:
                band(node, k1, k2)
            if k2 < kb:
                walk(right, right.lo, b)

        walk(G.root, alpha, beta)
        return out

    def _next_in(self, node: GNode, a: int, b: int, p: int) -> Optional[int]:
        """Smallest node-local position > p holding a label in [a, b]."""
        G = self.S
        G.visits += 1
        if node.is_leaf or (a == node.lo and b == node.hi):
            return p + 1 if p < node.size else None
        s = node.seq
        ka, kb = node.child_index(a), node.child_index(b)
        if ka == kb:
            q = self._next_in(node.children[ka - 1], a, b, s.rank(ka, p))
            return None if q is None else s.select(ka, q)
        left, right = node.children[ka - 1], node.children[kb - 1]
        k1 = ka if a == left.lo else ka + 1
        k2 = kb if b == right.hi else kb - 1
        found = []
        if k1 <= k2:
            G.band_probes += 1
            q = s.band_select_next(k1, k2, p)
            if q is not None:
                found.append(q)
        if k1 > ka:
            q = self._next_in(left, a, left.hi, s.rank(ka, p))
            if q is not None:
                found.append(s.select(ka, q))
        if k2 < kb:
            q = self._next_in(right, right.lo, b, s.rank(kb, p))
            if q is not None:
                found.append(s.select(kb, q))
        return min(found) if found else None

    # -- native queries ------------------------------------------------------

    def rel_min_obj_fst(self, alpha, beta, gamma, x):
        alpha, beta = self._labs(alpha, beta)
        G = self.S
        pos = None
        gamma = max(gamma, 1)
        if 1 <= x <= self.n and gamma <= beta:
            lo, hi = self.map(x - 1), self.map(x)
            q = self._next_in(G.root, gamma, beta, lo)
            if q is not None and q <= hi:
                pos = q
        if pos is None and alpha <= beta and x < self.n:
            pos = self._next_in(G.root, alpha, beta, self.map(max(x, 0)))
        if pos is None:
            return None
        return Pair(G.access(pos), self.unmap(pos))

    def rel_min_lab_fst(self, alpha, x, y, z):
        G = self.S
        if 1 <= alpha <= self.sigma:
            zz, yy = self._objs(z, y)
            if zz <= yy:
                lo, hi = self.map(zz - 1), self.map(yy)
                pos = G.select(alpha, G.rank(alpha, lo) + 1)
                if pos is not None and pos <= hi:
                    return Pair(alpha, self.unmap(pos))
        x, y = self._objs(x, y)
        a = max(alpha + 1, 1)
        if a > self.sigma or x > y:
            return None
        hit = self._min_label_from(a, self.map(x - 1), self.map(y))
        return None if hit is None else Pair(hit[0], self.unmap(hit[1]))

    def _min_label_from(self, a: int, lo: int, hi: int):
        """Smallest label >= a in S[lo+1..hi] with its first root position.

        Walk toward leaf a, remembering the deepest node where some child
        right of the path has content. If leaf a is empty, one binary search
        at that node finds the first such child, and RMQ leads from there.
        """
        if lo >= hi:
            return None
        G = self.S
        node, fallback = G.root, None
        while not node.is_leaf:
            G.visits += 1
            s = node.seq
            k = node.child_index(a)
            if k < node.arity and s.band_rank(k + 1, node.arity, hi) > s.band_rank(k + 1, node.arity, lo):
                fallback = (node, k, lo, hi)
            clo, chi = s.rank(k, lo), s.rank(k, hi)
            if clo == chi:
                break
            node, lo, hi = node.children[k - 1], clo, chi
        else:
            G.visits += 1
            return node.lo, G.map_up(node, lo + 1)
        if fallback is None:
            return None
        node, k, lo, hi = fallback
        s = node.seq
        G.child_searches += 1
        a, b = k + 1, node.arity
        while a < b:
            m = (a + b) // 2
            G.child_search_steps += 1
            if s.band_rank(k + 1, m, hi) > s.band_rank(k + 1, m, lo):
                b = m
            else:
                a = m + 1
        lo, hi = s.rank(a, lo), s.rank(a, hi)
        node = node.children[a - 1]
        while not node.is_leaf:
            G.visits += 1
            s = node.seq
            c = s.access(node.rmq.query(lo + 1, hi))
            lo, hi = s.rank(c, lo), s.rank(c, hi)
            node = node.children[c - 1]
        G.visits += 1
        return node.lo, G.map_up(node, lo + 1)

    def lab_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        lo, hi = self.map(x - 1), self.map(y)
        if lo >= hi:
            return 0
        G = self.S
        count = 0
        stack = [(G.root, alpha, beta, lo, hi)]
        while stack:
            node, a, b, lo, hi = stack.pop()
            G.visits += 1
            if node.is_leaf:
                count += 1
                continue
            s = node.seq
            ka, kb = node.child_index(a), node.child_index(b)
            before = s.probes
            present = s.distinct_in_range(ka, kb, lo + 1, hi)
            G.band_probes += s.probes - before
            for c in present:
                child = node.children[c - 1]
                stack.append((child, max(a, child.lo), min(b, child.hi),
                              s.rank(c, lo), s.rank(c, hi)))
        return count
