"""Relation wavelet tree: two presence bitmaps per node.

The root holds one position per object 1..n. A node over labels [lo, hi]
with midpoint m marks, for each of its objects, whether the object relates
to some label in [lo, m] (``BL``) and in [m+1, hi] (``BR``). Each child
keeps only the objects marked for it, in the same order, so an object can
descend into both children. Leaves store nothing; a leaf's size is the
number of ones in the parent bitmap that feeds it, i.e. the pairs of that
label.

The root is always internal. With sigma = 1 its right child covers the
empty label range [2, 1].

``row_unary`` is the label-major unary code 1^{t_1} 0 1^{t_2} 0 ... used
by ``lab`` and ``poslab``.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .bitvec import BitVector
from .core import BinaryRelation, Pair, RelationDims, normalize_pairs


class BrwtNode:
    __slots__ = ("lo", "hi", "mid", "depth", "parent", "is_right", "left", "right",
                 "BL", "BR", "size")

    def __init__(self, lo, hi, depth, parent, is_right):
        self.lo, self.hi, self.depth = lo, hi, depth
        self.mid = (lo + hi) // 2
        self.parent, self.is_right = parent, is_right
        self.left = self.right = None
        self.BL = self.BR = None
        self.size = 0

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __repr__(self) -> str:
        return f"BrwtNode([{self.lo},{self.hi}], size={self.size})"


class Brwt(BinaryRelation):
    def __init__(self, pairs: Iterable, n: int, sigma: int):
        pairs = normalize_pairs(pairs, n=n, sigma=sigma)
        dims = RelationDims(n, sigma, len(pairs))
        self._shape(dims)
        labels = np.fromiter((p.label for p in pairs), dtype=np.int64, count=len(pairs))
        objects = np.fromiter((p.object for p in pairs), dtype=np.int64, count=len(pairs))
        counts = np.bincount(labels, minlength=sigma + 1)[1:]
        self.row_unary = BitVector(_unary(counts))
        self._fill(self.root, np.arange(1, n + 1, dtype=np.int64), labels, objects)
        BinaryRelation.__init__(self, dims)

    @classmethod
    def from_parts(cls, dims: RelationDims, row_unary: BitVector,
                   node_bits: list[tuple[BitVector, BitVector]]) -> "Brwt":
        """Rebuild from row_unary and (BL, BR) of each internal node in BFS order."""
        self = cls.__new__(cls)
        self._shape(dims)
        if len(row_unary) != dims.sigma + dims.t or row_unary.ones != dims.t:
            raise ValueError("row bitmap does not match the relation size")
        self.row_unary = row_unary
        internal = self.internal_nodes()
        if len(node_bits) != len(internal):
            raise ValueError("node bitmap count does not match the tree shape")
        self.root.size = dims.n
        for v, (bl, br) in zip(internal, node_bits):
            if len(bl) != v.size or len(br) != v.size:
                raise ValueError(f"bitmaps of {v} do not match its size {v.size}")
            v.BL, v.BR = bl, br
            v.left.size, v.right.size = bl.ones, br.ones
        BinaryRelation.__init__(self, dims)
        return self

    def _shape(self, dims: RelationDims) -> None:
        self.dims = dims
        self.n, self.sigma, self.t = dims.n, dims.sigma, dims.t
        self.visits = 0
        self.leaves: list[Optional[BrwtNode]] = [None] * (dims.sigma + 1)
        self.root = BrwtNode(1, dims.sigma, 0, None, False)
        if dims.sigma == 1:
            self.root.mid = 1
            self.root.left = self._grow(1, 1, 1, self.root, False)
            self.root.right = self._grow(2, 1, 1, self.root, True)
        else:
            self._split(self.root)

    def _grow(self, lo, hi, depth, parent, is_right) -> BrwtNode:
        node = BrwtNode(lo, hi, depth, parent, is_right)
        if lo == hi:
            self.leaves[lo] = node
        elif lo < hi:
            self._split(node)
        return node

    def _split(self, node: BrwtNode) -> None:
        node.left = self._grow(node.lo, node.mid, node.depth + 1, node, False)
        node.right = self._grow(node.mid + 1, node.hi, node.depth + 1, node, True)

    def _fill(self, node, objs, labels, objects) -> None:
        """objs: the node's objects in order; labels/objects: its pairs."""
        node.size = int(objs.size)
        if node.is_leaf:
            return
        in_left = labels <= node.mid
        left_objs = np.unique(objects[in_left])
        right_objs = np.unique(objects[~in_left])
        node.BL = BitVector(np.isin(objs, left_objs))
        node.BR = BitVector(np.isin(objs, right_objs))
        self._fill(node.left, left_objs, labels[in_left], objects[in_left])
        self._fill(node.right, right_objs, labels[~in_left], objects[~in_left])

    def bfs(self) -> list[BrwtNode]:
        out, i = [self.root], 0
        while i < len(out):
            v = out[i]
            if not v.is_leaf:
                out += (v.left, v.right)
            i += 1
        return out

    def internal_nodes(self) -> list[BrwtNode]:
        return [v for v in self.bfs() if not v.is_leaf]

    def reset_visits(self) -> None:
        self.visits = 0

    # -- row bitmap ------------------------------------------------------

    def lab(self, r: int) -> int:
        """Label of the r-th pair in label-major order."""
        if not 1 <= r <= self.t:
            raise IndexError(f"pair rank {r} outside [1, {self.t}]")
        return 1 + self.row_unary.rank0(self.row_unary.select1(r))

    def poslab(self, alpha: int) -> int:
        """Pairs with label <= alpha (where label alpha's run ends)."""
        if not 1 <= alpha <= self.sigma:
            raise IndexError(f"label {alpha} outside [1, {self.sigma}]")
        return self.row_unary.rank1(self.row_unary.select0(alpha))

    # -- navigation ------------------------------------------------------

    @staticmethod
    def _down(node: BrwtNode, right: bool, p: int) -> int:
        return (node.BR if right else node.BL).rank1(p)

    def map_down(self, node: BrwtNode, p: int) -> int:
        """Root prefix [1, p] -> prefix length inside ``node``."""
        path = []
        while node.parent is not None:
            path.append(node)
            node = node.parent
        for child in reversed(path):
            self.visits += 1
            p = self._down(child.parent, child.is_right, p)
        return p

    def map_up(self, node: BrwtNode, p: int) -> int:
        if not 1 <= p <= node.size:
            raise IndexError(f"position {p} outside node of size {node.size}")
        while node.parent is not None:
            par = node.parent
            p = (par.BR if node.is_right else par.BL).select1(p)
            node = par
        return p

    def cover(self, alpha: int, beta: int) -> list[BrwtNode]:
        """Maximal non-root nodes partitioning [alpha, beta], left to right.

        The root is split even when fully covered: its positions include
        objects with no pairs at all.
        """
        out: list[BrwtNode] = []
        stack = [self.root.right, self.root.left]
        while stack:
            node = stack.pop()
            if node.hi < alpha or node.lo > beta or node.lo > node.hi:
                continue
            if alpha <= node.lo and node.hi <= beta:
                out.append(node)
            else:
                stack += (node.right, node.left)
        return out

    def _leftmost(self, node: BrwtNode, lo: int, hi: int) -> tuple[int, int]:
        """Descend from a node with nonempty interval (lo, hi], preferring left.

        Returns (label, node-local leaf position of the first element).
        """
        while not node.is_leaf:
            self.visits += 1
            l0, l1 = node.BL.rank1(lo), node.BL.rank1(hi)
            if l1 > l0:
                node, lo, hi = node.left, l0, l1
            else:
                node, lo, hi = node.right, node.BR.rank1(lo), node.BR.rank1(hi)
        self.visits += 1
        return node.lo, self.map_up(node, lo + 1)

    def _walk(self, alpha, beta, x, y):
        """Yield (leaf, lo, hi) for every leaf of [alpha,beta] whose projection of
        objects [x, y] is nonempty, pruning empty intervals on the way."""
        stack = [(self.root, x - 1, y)]
        while stack:
            node, lo, hi = stack.pop()
            self.visits += 1
            if node.is_leaf:
                yield node, lo, hi
                continue
            if node.mid < beta and node.right.lo <= node.right.hi:
                r0, r1 = node.BR.rank1(lo), node.BR.rank1(hi)
                if r1 > r0:
                    stack.append((node.right, r0, r1))
            if alpha <= node.mid:
                l0, l1 = node.BL.rank1(lo), node.BL.rank1(hi)
                if l1 > l0:
                    stack.append((node.left, l0, l1))

    # -- native queries ----------------------------------------------------

    def rel_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        return sum(hi - lo for _, lo, hi in self._walk(alpha, beta, x, y))

    def lab_num(self, alpha, beta, x, y):
        alpha, beta = self._labs(alpha, beta)
        x, y = self._objs(x, y)
        if alpha > beta or x > y:
            return 0
        return sum(1 for _ in self._walk(alpha, beta, x, y))

    def _first_in_cover(self, alpha, beta, x, y):
        """Label-major first pair of relacc(alpha, beta, x, y)."""
        for v in self.cover(alpha, beta):
            lo, hi = self.map_down(v, x - 1), self.map_down(v, y)
            if hi > lo:
                label, pos = self._leftmost(v, lo, hi)
                return Pair(label, pos)
        return None

    def rel_min_lab_fst(self, alpha, x, y, z):
        if 1 <= alpha <= self.sigma:
            zz, yy = self._objs(z, y)
            if zz <= yy:
                leaf = self.leaves[alpha]
                lo, hi = self.map_down(leaf, zz - 1), self.map_down(leaf, yy)
                if hi > lo:
                    self.visits += 1
                    return Pair(alpha, self.map_up(leaf, lo + 1))
        a = max(alpha + 1, 1)
        x, y = self._objs(x, y)
        if a > self.sigma or x > y:
            return None
        return self._first_in_cover(a, self.sigma, x, y)

    def rel_min_obj_fst(self, alpha, beta, gamma, x):
        alpha, beta = self._labs(alpha, beta)
        gamma = max(gamma, 1)
        if 1 <= x <= self.n and gamma <= beta:
            p = self._first_in_cover(gamma, beta, x, x)
            if p is not None:
                return p
        if alpha > beta or x >= self.n:
            return None
        start = max(x, 0)
        best = None
        for v in self.cover(alpha, beta):
            p = self.map_down(v, start)
            if p < v.size:
                obj = self.map_up(v, p + 1)
                # strict < keeps the leftmost node (smallest labels) on ties
                if best is None or obj < best[0]:
                    best = (obj, v, p)
        if best is None:
            return None
        obj, v, p = best
        label, _ = self._leftmost(v, p, p + 1)
        return Pair(label, obj)

    def obj_sel_one(self, alpha, x, j):
        x = max(x, 1)
        if not 1 <= alpha <= self.sigma or x > self.n:
            return None
        leaf = self.leaves[alpha]
        p = self.map_down(leaf, x - 1) + j
        return self.map_up(leaf, p) if p <= leaf.size else None

    # -- accounting ------------------------------------------------------

    def pairs(self) -> list[Pair]:
        out = []
        for a in range(1, self.sigma + 1):
            leaf = self.leaves[a]
            out += [Pair(a, self.map_up(leaf, p)) for p in range(1, leaf.size + 1)]
        return out

    def leaf_level_ones(self) -> int:
        """Ones in the bitmaps that feed leaves: one per pair."""
        total = 0
        for v in self.internal_nodes():
            if v.left.is_leaf and v.left.lo <= v.left.hi:
                total += v.BL.ones
            if v.right.is_leaf and v.right.lo <= v.right.hi:
                total += v.BR.ones
        return total

    @property
    def payload_bits(self) -> int:
        return len(self.row_unary) + sum(2 * v.size for v in self.internal_nodes())

    @property
    def directory_bits(self) -> int:
        total = self.row_unary.directory_bits
        for v in self.internal_nodes():
            total += v.BL.directory_bits + v.BR.directory_bits
        return total


def _unary(counts) -> list[int]:
    bits: list[int] = []
    for c in counts:
        bits += [1] * int(c)
        bits.append(0)
    return bits
