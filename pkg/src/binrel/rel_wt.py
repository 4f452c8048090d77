"""Column bitmap plus a binary wavelet tree over the label string.

Same layout as :mod:`binrel.rel_str`, but the queries walk the wavelet tree
directly instead of going through per-label rank/select. ``visits`` counts
wavelet tree nodes entered top-down.
"""

from __future__ import annotations

import math
from typing import Iterable

from .bitvec import BitVector
from .core import Pair, RelationDims, normalize_pairs
from .rel_str import ColumnLayout, column_layout
from .seq import WaveletTree

SEL_OBJ_STRATEGIES = ("auto", "columns", "cover")


class SortedPositions:
    """Root positions held by one tree node (or band), in increasing order.

    ``start`` is how many of them precede the query window; ``upto(P)``
    counts those at root positions <= P; ``at(m)`` maps the m-th back up.
    """

    __slots__ = ("start", "size", "upto", "at")

    def __init__(self, start, size, upto, at):
        self.start, self.size, self.upto, self.at = start, size, upto, at


def select_in_union(lists: list[SortedPositions], j: int):
    """Root position of the j-th element of the union past each list's start.

    Windows over the lists shrink around the middle of the widest one until
    the probed position has exactly j elements at or before it.
    """
    if sum(s.size - s.start for s in lists) < j:
        return None
    win = [[s.start + 1, min(s.size, s.start + j)] for s in lists]
    while True:
        i = max(range(len(lists)), key=lambda k: win[k][1] - win[k][0])
        a, b = win[i]
        if a > b:
            raise RuntimeError("union selection lost its target")
        m = (a + b) // 2
        pos = lists[i].at(m)
        local = [m if k == i else s.upto(pos) for k, s in enumerate(lists)]
        c = sum(loc - s.start for loc, s in zip(local, lists))
        if c == j:
            return pos
        for k in range(len(lists)):
            if c < j:
                win[k][0] = max(win[k][0], local[k] + 1)
            else:
                win[k][1] = min(win[k][1], local[k] - 1 if k == i else local[k])


class WaveletRelation(ColumnLayout):
    """Queries shared by the binary and multiary wavelet tree layouts.

    Subclasses provide ``_count_less`` and ``_quantile`` over root intervals
    and ``_cover_lists``; S must offer rank, select, rank_le, access.
    """

    sel_obj_strategy = "auto"

    @property
    def visits(self) -> int:
        return self.S.visits

    def reset_visits(self) -> None:
        self.S.visits = 0

    def _kth_from(self, alpha: int, k: int, lo: int, hi: int):
        """k-th smallest symbol >= alpha in S[lo+1..hi], as (label, root position)."""
        k += self._count_less(alpha, lo, hi)
        if k > hi - lo:
            return None
        return self._quantile(k, lo, hi)

    def rel_rnk(self, alpha, x):
        alpha, x = min(alpha, self.sigma), min(x, self.n)
        if alpha < 1 or x < 1:
            return 0
        return self.S.rank_le(alpha, self.map(x))

    def rel_sel_lab_fst(self, alpha, j, x, y):
        alpha = max(alpha, 1)
        x, y = self._objs(x, y)
        if alpha > self.sigma or x > y:
            return None
        hit = self._kth_from(alpha, j, self.map(x - 1), self.map(y))
        return None if hit is None else Pair(hit[0], self.unmap(hit[1]))

    def rel_sel_obj_fst(self, alpha, beta, x, j):
        alpha, beta = self._labs(alpha, beta)
        x = max(x, 1)
        if alpha > beta or x > self.n:
            return None
        start = self.map(x - 1)
        if alpha == 1 and beta == self.sigma:
            pos = start + j
            return Pair(self.S.access(pos), self.unmap(pos)) if pos <= self.t else None
        strategy = self.sel_obj_strategy
        if strategy == "auto":
            cheap = math.log2(self.n) <= math.log2(j) * math.log2(beta - alpha + 1)
            strategy = "columns" if cheap else "cover"
        if strategy == "columns":
            return self._sel_obj_by_columns(alpha, beta, x, j, start)
        pos = select_in_union(self._cover_lists(alpha, beta, start), j)
        return None if pos is None else Pair(self.S.access(pos), self.unmap(pos))

    def _range_count(self, alpha, beta, lo, hi) -> int:
        return (self.S.rank_le(beta, hi) - self.S.rank_le(alpha - 1, hi)
                - self.S.rank_le(beta, lo) + self.S.rank_le(alpha - 1, lo))

    def _sel_obj_by_columns(self, alpha, beta, x, j, start):
        # smallest column y with at least j pairs of [alpha,beta] in columns x..y
        if self._range_count(alpha, beta, start, self.t) < j:
            return None
        lo, hi = x, self.n
        while lo < hi:
            mid = (lo + hi) // 2
            if self._range_count(alpha, beta, start, self.map(mid)) >= j:
                hi = mid
            else:
                lo = mid + 1
        before = self._range_count(alpha, beta, start, self.map(lo - 1))
        label, _ = self._kth_from(alpha, j - before, self.map(lo - 1), self.map(lo))
        return Pair(label, lo)

    def _column_min(self, gamma, beta, x):
        """Smallest label of column x within [gamma, beta], or None."""
        if not 1 <= x <= self.n or max(gamma, 1) > beta:
            return None
        hit = self._kth_from(max(gamma, 1), 1, self.map(x - 1), self.map(x))
        return hit[0] if hit is not None and hit[0] <= beta else None

    def obj_sel_one(self, alpha, x, j):
        x = max(x, 1)
        if not 1 <= alpha <= self.sigma or x > self.n:
            return None
        pos = self.S.select(alpha, j + self.S.rank(alpha, self.map(x - 1)))
        return None if pos is None else self.unmap(pos)

    def obj_rnk_one(self, alpha, x):
        x = min(x, self.n)
        if not 1 <= alpha <= self.sigma or x < 1:
            return 0
        return self.S.rank(alpha, self.map(x))


class BinRelWt(WaveletRelation):
    def __init__(self, pairs: Iterable, n: int, sigma: int, sel_obj_strategy: str = "auto"):
        if sel_obj_strategy not in SEL_OBJ_STRATEGIES:
            raise ValueError(f"sel_obj_strategy must be one of {SEL_OBJ_STRATEGIES}")
        pairs = normalize_pairs(pairs, n=n, sigma=sigma)
        B, labels = column_layout(pairs, n)
        self.sel_obj_strategy = sel_obj_strategy
        self._attach(RelationDims(n, sigma, len(pairs)), B, WaveletTree(labels, sigma))

    @classmethod
    def from_parts(cls, dims: RelationDims, B: BitVector, W: WaveletTree) -> "BinRelWt":
        self = cls.__new__(cls)
        self._attach(dims, B, W)
        return self

    @property
    def W(self) -> WaveletTree:
        return self.S

    # -- walks over a root interval S[lo+1..hi] ----------------------------

    def _count_less(self, a: int, lo: int, hi: int) -> int:
        """Symbols < a in S[lo+1..hi], one descent for both boundaries."""
        if a <= 1 or hi <= lo:
            return 0
        if a > self.sigma:
            return hi - lo
        W = self.S
        node, c = W.root, 0
        while node.left is not None:
            W.visits += 1
            zl, zh = node.rank0(lo), node.rank0(hi)
            if a - 1 <= node.mid:
                lo, hi = zl, zh
                node = node.left
            else:
                c += zh - zl
                lo, hi = lo - zl, hi - zh
                node = node.right
        W.visits += 1
        return c + hi - lo

    def _quantile(self, k: int, lo: int, hi: int) -> tuple[int, int]:
        """k-th smallest symbol of S[lo+1..hi] and its root position."""
        W = self.S
        node = W.root
        while node.left is not None:
            W.visits += 1
            zl, zh = node.rank0(lo), node.rank0(hi)
            if k <= zh - zl:
                lo, hi = zl, zh
                node = node.left
            else:
                k -= zh - zl
                lo, hi = lo - zl, hi - zh
                node = node.right
        W.visits += 1
        return node.lo, W.map_up(node, lo + k)

    def _cover_lists(self, alpha, beta, start) -> list[SortedPositions]:
        W = self.S
        return [
            SortedPositions(W.map_down(v, start), v.size,
                            lambda P, v=v: W.map_down(v, P),
                            lambda m, v=v: W.map_up(v, m))
            for v in W.cover(alpha, beta)
        ]

    # -- native queries ------------------------------------------------------

    def rel_min_obj_fst(self, alpha, beta, gamma, x):
        alpha, beta = self._labs(alpha, beta)
        label = self._column_min(gamma, beta, x)
        if label is not None:
            return Pair(label, x)
        if alpha > beta or x >= self.n:
            return None
        # first position past column x among the cover nodes, mapped back to the root
        W = self.S
        start = self.map(max(x, 0))
        best = None
        for v in W.cover(alpha, beta):
            p = W.map_down(v, start) + 1
            if p <= v.size:
                pos = W.map_up(v, p)
                if best is None or pos < best:
                    best = pos
        if best is None:
            return None
        return Pair(W.access(best), self.unmap(best))

    def lab_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        W = self.S
        count = 0
        lo, hi = self.map(x - 1), self.map(y)
        stack = [(W.root, lo, hi)] if hi > lo else []
        while stack:
            node, lo, hi = stack.pop()
            W.visits += 1
            if node.left is None:
                count += 1
                continue
            zl, zh = node.rank0(lo), node.rank0(hi)
            if node.mid < beta and hi - zh > lo - zl:
                stack.append((node.right, lo - zl, hi - zh))
            if alpha <= node.mid and zh > zl:
                stack.append((node.left, zl, zh))
        return count
