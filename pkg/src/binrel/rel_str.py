"""Column-cardinality bitmap B plus label string S.

Objects are laid out left to right. Column x contributes its labels, in
ascending order, to S and the unary code 1^{t_x} 0 to B. ``map(x)`` is the
number of pairs in columns 1..x, so column x occupies S[map(x-1)+1 .. map(x)].
"""

from __future__ import annotations

from typing import Iterable

from .bitvec import BitVector
from .core import BinaryRelation, Pair, RelationDims, normalize_pairs, object_major
from .seq import WaveletTree

STRATEGIES = ("auto", "label", "object")


def column_layout(pairs: list[Pair], n: int) -> tuple[BitVector, list[int]]:
    """B and S for pairs already deduplicated."""
    cols = sorted(pairs, key=object_major)
    counts = [0] * (n + 1)
    for p in cols:
        counts[p.object] += 1
    bits = []
    for x in range(1, n + 1):
        bits += [1] * counts[x]
        bits.append(0)
    return BitVector(bits), [p.label for p in cols]


def make_sequence(kind: str, symbols: list[int], sigma: int, **opts):
    if kind == "wt":
        return WaveletTree(symbols, sigma)
    if kind == "gwt":
        from .rel_gwt import GeneralizedWaveletTree

        return GeneralizedWaveletTree(symbols, sigma, **opts)
    raise ValueError(f"unknown sequence kind {kind!r}")


class ColumnLayout(BinaryRelation):
    """Shared B / map / unmap machinery for the string-based representations."""

    def _attach(self, dims: RelationDims, B: BitVector, seq) -> None:
        if len(B) != dims.n + dims.t or B.ones != dims.t:
            raise ValueError("column bitmap does not match the relation size")
        if len(seq) != dims.t:
            raise ValueError("label string does not match the relation size")
        self.B = B
        self.S = seq
        BinaryRelation.__init__(self, dims)

    def map(self, x: int) -> int:
        """Pairs in columns 1..x (map(0) = 0)."""
        if not 0 <= x <= self.n:
            raise IndexError(f"object {x} outside [0, {self.n}]")
        if x == 0:
            return 0
        return self.B.select0(x) - x

    def unmap(self, m: int) -> int:
        """Object owning position m of S."""
        if not 1 <= m <= self.t:
            raise IndexError(f"position {m} outside [1, {self.t}]")
        return self.B.select1(m) - m + 1

    def area(self, x: int, y: int) -> tuple[int, int]:
        """S[p..q] holding columns x..y (already clipped, x <= y)."""
        return self.map(x - 1) + 1, self.map(y)

    def column_count(self, x: int) -> int:
        return self.map(x) - self.map(x - 1)

    @property
    def payload_bits(self) -> int:
        return self.B.payload_bits + self.S.payload_bits

    @property
    def directory_bits(self) -> int:
        return self.B.directory_bits + self.S.directory_bits

    def pairs(self) -> list[Pair]:
        out = []
        for x in range(1, self.n + 1):
            p, q = self.area(x, x)
            out += [Pair(self.S.access(i), x) for i in range(p, q + 1)]
        return sorted(out)


class BinRelStr(ColumnLayout):
    """Relation over a pluggable sequence structure for S.

    ``strategy`` picks between the label-driven (rank/select per label) and
    object-driven (search within each column area) algorithms; "auto"
    chooses by predicted work. Answers do not depend on it.
    """

    def __init__(self, pairs: Iterable, n: int, sigma: int, sequence: str = "wt",
                 strategy: str = "auto", **seq_opts):
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        pairs = normalize_pairs(pairs, n=n, sigma=sigma)
        B, labels = column_layout(pairs, n)
        self.sequence_kind = sequence
        self.strategy = strategy
        self._attach(RelationDims(n, sigma, len(pairs)), B, make_sequence(sequence, labels, sigma, **seq_opts))

    @classmethod
    def from_parts(cls, dims: RelationDims, B: BitVector, seq, sequence: str = "wt",
                   strategy: str = "auto") -> "BinRelStr":
        self = cls.__new__(cls)
        self.sequence_kind = sequence
        self.strategy = strategy
        self._attach(dims, B, seq)
        return self

    def _pick(self, label_work: int, object_work: int) -> str:
        if self.strategy != "auto":
            return self.strategy
        return "label" if label_work <= object_work else "object"

    # -- column-area searches ------------------------------------------

    def _lower(self, p: int, q: int, a: int) -> int:
        """First position in S[p..q] with label >= a (q+1 if none).

        Labels in a column strictly increase, so the answer lies within
        the first a positions of the area.
        """
        lo, hi = p, min(q, p + a - 1) + 1
        S = self.S
        while lo < hi:
            mid = (lo + hi) // 2
            if S.access(mid) < a:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _band(self, z: int, a: int, b: int) -> tuple[int, int]:
        """S[lo..hi] of column z holding labels in [a, b]."""
        p, q = self.area(z, z)
        return self._lower(p, q, a), self._lower(p, q, b + 1) - 1

    def _rank_in(self, a: int, p: int, q: int) -> int:
        return self.S.rank(a, q) - self.S.rank(a, p - 1)

    # -- counting --------------------------------------------------------

    def rel_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        if alpha == 1 and beta == self.sigma:
            return self.map(y) - self.map(x - 1)
        if self._pick(beta - alpha + 1, (y - x + 1) * beta.bit_length()) == "label":
            p, q = self.area(x, y)
            return sum(self._rank_in(g, p, q) for g in range(alpha, beta + 1))
        total = 0
        for z in range(x, y + 1):
            lo, hi = self._band(z, alpha, beta)
            total += hi - lo + 1
        return total

    def lab_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        if self._pick(beta - alpha + 1, (y - x + 1) * (alpha.bit_length() + beta - alpha)) == "label":
            p, q = self.area(x, y)
            return sum(1 for g in range(alpha, beta + 1) if self._rank_in(g, p, q))
        seen = bytearray(beta - alpha + 1)
        for z in range(x, y + 1):
            lo, hi = self._band(z, alpha, beta)
            for i in range(lo, hi + 1):
                seen[self.S.access(i) - alpha] = 1
        return sum(seen)

    def obj_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        if self._pick((beta - alpha + 1) * (y - x + 1), (y - x + 1) * alpha.bit_length()) == "object":
            count = 0
            for z in range(x, y + 1):
                lo, hi = self._band(z, alpha, beta)
                count += lo <= hi
            return count
        return len(self._objects_by_label(alpha, beta, x, y))

    def _objects_by_label(self, alpha, beta, x, y) -> dict[int, int]:
        """Pair count per object of [x, y], via successive selects per label."""
        p, q = self.area(x, y)
        hits: dict[int, int] = {}
        for g in range(alpha, beta + 1):
            first, last = self.S.rank(g, p - 1) + 1, self.S.rank(g, q)
            for j in range(first, last + 1):
                z = self.unmap(self.S.select(g, j))
                hits[z] = hits.get(z, 0) + 1
        return hits

    def obj_rnk_one(self, alpha, x):
        if not 1 <= alpha <= self.sigma:
            return 0
        x = min(x, self.n)
        if x < 1:
            return 0
        return self.S.rank(alpha, self.map(x))

    # -- selection ---------------------------------------------------------

    def rel_sel_lab_fst(self, alpha, j, x, y):
        alpha = max(alpha, 1)
        x, y = self._objs(x, y)
        if alpha > self.sigma or x > y:
            return None
        p, q = self.area(x, y)
        if self._pick(self.sigma - alpha + 1, (y - x + 1) * (self.sigma - alpha + 1)) == "label":
            c = 0
            for g in range(alpha, self.sigma + 1):
                before = self.S.rank(g, p - 1)
                here = self.S.rank(g, q) - before
                if c + here >= j:
                    return Pair(g, self.unmap(self.S.select(g, j - c + before)))
                c += here
            return None
        counts = [0] * (self.sigma + 2)
        for z in range(x, y + 1):
            zp, zq = self.area(z, z)
            for i in range(zq, zp - 1, -1):
                g = self.S.access(i)
                if g < alpha:
                    break
                counts[g] += 1
        c = 0
        for g in range(alpha, self.sigma + 1):
            if c + counts[g] >= j:
                k = j - c
                for z in range(x, y + 1):
                    lo, hi = self._band(z, g, g)
                    if lo <= hi:
                        k -= 1
                        if k == 0:
                            return Pair(g, z)
            c += counts[g]
        return None

    def rel_sel_obj_fst(self, alpha, beta, x, j):
        alpha, beta = self._labs(alpha, beta)
        x = max(x, 1)
        if alpha > beta or x > self.n:
            return None
        work_obj = (self.n - x + 1) * beta.bit_length()
        work_lab = (beta - alpha + 1) * (self.n - x + 2)
        if self._pick(work_lab, work_obj) == "object":
            c = 0
            for z in range(x, self.n + 1):
                lo, hi = self._band(z, alpha, beta)
                if c + hi - lo + 1 >= j:
                    return Pair(self.S.access(j - c + lo - 1), z)
                c += hi - lo + 1
            return None
        hits = self._objects_by_label(alpha, beta, x, self.n)
        c = 0
        for z in sorted(hits):
            if c + hits[z] >= j:
                lo, _ = self._band(z, alpha, beta)
                return Pair(self.S.access(lo + j - c - 1), z)
            c += hits[z]
        return None

    def lab_sel_one(self, alpha, j, x):
        alpha = max(alpha, 1)
        if not 1 <= x <= self.n or alpha > self.sigma:
            return None
        p, q = self.area(x, x)
        pos = self._lower(p, q, alpha) + j - 1
        return self.S.access(pos) if pos <= q else None

    def obj_sel_one(self, alpha, x, j):
        x = max(x, 1)
        if not 1 <= alpha <= self.sigma or x > self.n:
            return None
        pos = self.S.select(alpha, j + self.S.rank(alpha, self.map(x - 1)))
        return None if pos is None else self.unmap(pos)

    # -- listing -----------------------------------------------------------

    def rel_acc(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        out = []
        if alpha > beta or x > y:
            return out
        for z in range(x, y + 1):
            lo, hi = self._band(z, alpha, beta)
            out += [Pair(self.S.access(i), z) for i in range(lo, hi + 1)]
        return out

    def lab_acc(self, alpha, beta, x, y):
        return sorted({p.label for p in self.rel_acc(alpha, beta, x, y)})

    def obj_acc(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta:
            return []
        out = []
        for z in range(x, y + 1):
            lo, hi = self._band(z, alpha, beta)
            if lo <= hi:
                out.append(z)
        return out
