"""Binary relations R in [1,sigma] x [1,n]: types, query catalog, oracle.

Labels are rows (alpha, beta, gamma), objects are columns (x, y, z). Every
representation subclasses :class:`BinaryRelation`, overrides the queries
it answers natively, and gets the rest through the reduction planner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

import numpy as np


class Pair(NamedTuple):
    label: int
    object: int


@dataclass(frozen=True)
class RelationDims:
    n: int
    sigma: int
    t: int

    def __post_init__(self):
        if self.n < 1 or self.sigma < 1:
            raise ValueError("n and sigma must be >= 1")
        if not 0 <= self.t <= self.n * self.sigma:
            raise ValueError(f"t={self.t} outside [0, n*sigma]")


class QueryError(ValueError):
    """Unknown operation, wrong arity, or argument outside its universe."""


# Argument kinds: L label, O object, J ordinal (>= 1).
# Result kinds: count, pair, pairs, label, labels, object, objects.
OPS: dict[str, tuple[str, str]] = {
    "rel_acc": ("LLOO", "pairs"),
    "rel_sel_lab_fst": ("LJOO", "pair"),
    "rel_min_lab_fst": ("LOOO", "pair"),
    "rel_sel_obj_fst": ("LLOJ", "pair"),
    "rel_min_obj_fst": ("LLLO", "pair"),
    "rel_num": ("LLOO", "count"),
    "rel_rnk": ("LO", "count"),
    "rel_rnk_lab_fst": ("LOOO", "count"),
    "rel_rnk_obj_fst": ("LLLO", "count"),
    "lab_acc": ("LLOO", "labels"),
    "lab_acc_one": ("LLO", "labels"),
    "lab_sel": ("LJOO", "label"),
    "lab_sel_one": ("LJO", "label"),
    "lab_min": ("LOO", "label"),
    "lab_min_one": ("LO", "label"),
    "lab_num": ("LLOO", "count"),
    "lab_rnk": ("LOO", "count"),
    "lab_rnk_one": ("LO", "count"),
    "obj_acc": ("LLOO", "objects"),
    "obj_acc_one": ("LOO", "objects"),
    "obj_sel": ("LLOJ", "object"),
    "obj_sel_one": ("LOJ", "object"),
    "obj_min": ("LLO", "object"),
    "obj_min_one": ("LO", "object"),
    "obj_num": ("LLOO", "count"),
    "obj_rnk": ("LLO", "count"),
    "obj_rnk_one": ("LO", "count"),
}

SET_RESULTS = ("pairs", "labels", "objects")


def label_major(p: Pair) -> tuple[int, int]:
    return (p.label, p.object)


def object_major(p: Pair) -> tuple[int, int]:
    return (p.object, p.label)


class BinaryRelation:
    """Query surface shared by all representations.

    Argument ranges may be empty (x > y, alpha > beta) and endpoints may sit
    one step outside the universe (0 or n+1, 0 or sigma+1); ranges are
    intersected with the universe. Selections and minima return None when
    nothing qualifies.
    """

    n: int
    sigma: int
    t: int

    def __init__(self, dims: RelationDims, native: Optional[Iterable[str]] = None):
        self.dims = dims
        self.n, self.sigma, self.t = dims.n, dims.sigma, dims.t
        from .reductions import plan

        self.native = frozenset(native) if native is not None else self.native_ops()
        self.plan = plan(self.native)

    @classmethod
    def native_ops(cls) -> frozenset[str]:
        return _overridden(cls)

    # -- helpers for implementations -----------------------------------

    def _labs(self, a: int, b: int) -> tuple[int, int]:
        return max(a, 1), min(b, self.sigma)

    def _objs(self, x: int, y: int) -> tuple[int, int]:
        return max(x, 1), min(y, self.n)

    def _derive(self, op: str, *args):
        return self.plan[op].fn(self, *args)

    # -- checked entry point -------------------------------------------

    def query(self, op: str, *args):
        """Validate, answer, and normalize: sets come back sorted."""
        try:
            kinds, result = OPS[op]
        except KeyError:
            raise QueryError(f"unknown operation {op!r}") from None
        if len(args) != len(kinds):
            raise QueryError(f"{op} takes {len(kinds)} arguments, got {len(args)}")
        for kind, v in zip(kinds, args):
            if not isinstance(v, (int, np.integer)):
                raise QueryError(f"{op}: argument {v!r} is not an integer")
            if kind == "L" and not 0 <= v <= self.sigma + 1:
                raise QueryError(f"{op}: label {v} outside [0, {self.sigma + 1}]")
            if kind == "O" and not 0 <= v <= self.n + 1:
                raise QueryError(f"{op}: object {v} outside [0, {self.n + 1}]")
            if kind == "J" and v < 1:
                raise QueryError(f"{op}: ordinal {v} must be >= 1")
        out = getattr(self, op)(*(int(v) for v in args))
        if result == "pairs":
            return sorted(Pair(*p) for p in out)
        if result in SET_RESULTS:
            return sorted(out)
        if result == "pair" and out is not None:
            return Pair(*out)
        return out

    # -- the 27 operations (derived unless overridden) ------------------

    def rel_acc(self, alpha, beta, x, y):
        return self._derive("rel_acc", alpha, beta, x, y)

    def rel_sel_lab_fst(self, alpha, j, x, y):
        return self._derive("rel_sel_lab_fst", alpha, j, x, y)

    def rel_min_lab_fst(self, alpha, x, y, z):
        return self._derive("rel_min_lab_fst", alpha, x, y, z)

    def rel_sel_obj_fst(self, alpha, beta, x, j):
        return self._derive("rel_sel_obj_fst", alpha, beta, x, j)

    def rel_min_obj_fst(self, alpha, beta, gamma, x):
        return self._derive("rel_min_obj_fst", alpha, beta, gamma, x)

    def rel_num(self, alpha, beta, x, y):
        return self._derive("rel_num", alpha, beta, x, y)

    def rel_rnk(self, alpha, x):
        return self._derive("rel_rnk", alpha, x)

    def rel_rnk_lab_fst(self, alpha, x, y, z):
        return self._derive("rel_rnk_lab_fst", alpha, x, y, z)

    def rel_rnk_obj_fst(self, alpha, beta, gamma, x):
        return self._derive("rel_rnk_obj_fst", alpha, beta, gamma, x)

    def lab_acc(self, alpha, beta, x, y):
        return self._derive("lab_acc", alpha, beta, x, y)

    def lab_acc_one(self, alpha, beta, x):
        return self._derive("lab_acc_one", alpha, beta, x)

    def lab_sel(self, alpha, j, x, y):
        return self._derive("lab_sel", alpha, j, x, y)

    def lab_sel_one(self, alpha, j, x):
        return self._derive("lab_sel_one", alpha, j, x)

    def lab_min(self, alpha, x, y):
        return self._derive("lab_min", alpha, x, y)

    def lab_min_one(self, alpha, x):
        return self._derive("lab_min_one", alpha, x)

    def lab_num(self, alpha, beta, x, y):
        return self._derive("lab_num", alpha, beta, x, y)

    def lab_rnk(self, alpha, x, y):
        return self._derive("lab_rnk", alpha, x, y)

    def lab_rnk_one(self, alpha, x):
        return self._derive("lab_rnk_one", alpha, x)

    def obj_acc(self, alpha, beta, x, y):
        return self._derive("obj_acc", alpha, beta, x, y)

    def obj_acc_one(self, alpha, x, y):
        return self._derive("obj_acc_one", alpha, x, y)

    def obj_sel(self, alpha, beta, x, j):
        return self._derive("obj_sel", alpha, beta, x, j)

    def obj_sel_one(self, alpha, x, j):
        return self._derive("obj_sel_one", alpha, x, j)

    def obj_min(self, alpha, beta, x):
        return self._derive("obj_min", alpha, beta, x)

    def obj_min_one(self, alpha, x):
        return self._derive("obj_min_one", alpha, x)

    def obj_num(self, alpha, beta, x, y):
        return self._derive("obj_num", alpha, beta, x, y)

    def obj_rnk(self, alpha, beta, x):
        return self._derive("obj_rnk", alpha, beta, x)

    def obj_rnk_one(self, alpha, x):
        return self._derive("obj_rnk_one", alpha, x)


@lru_cache(maxsize=None)
def _overridden(cls) -> frozenset[str]:
    return frozenset(op for op in OPS if getattr(cls, op) is not getattr(BinaryRelation, op))


def normalize_pairs(pairs: Iterable, dims: Optional[RelationDims] = None,
                    n: Optional[int] = None, sigma: Optional[int] = None) -> list[Pair]:
    """Deduplicate, bounds-check, and sort pairs label-major."""
    if dims is not None:
        n, sigma = dims.n, dims.sigma
    out = set()
    for a, x in pairs:
        a, x = int(a), int(x)
        if not (1 <= a <= sigma and 1 <= x <= n):
            raise ValueError(f"pair ({a}, {x}) outside [1,{sigma}] x [1,{n}]")
        out.add(Pair(a, x))
    return sorted(out)


class NaiveRelation(BinaryRelation):
    """Brute-force oracle: every query read straight off the membership matrix."""

    def __init__(self, pairs: Iterable, n: int, sigma: int):
        self.pairs = normalize_pairs(pairs, n=n, sigma=sigma)
        m = np.zeros((sigma + 2, n + 2), dtype=bool)
        for a, x in self.pairs:
            m[a, x] = True
        self.matrix = m
        self.pairs_object_major = sorted(self.pairs, key=object_major)
        super().__init__(RelationDims(n, sigma, len(self.pairs)))

    def _block(self, a, b, x, y):
        a, b = self._labs(a, b)
        x, y = self._objs(x, y)
        if a > b or x > y:
            return np.zeros((0, 0), dtype=bool), a, x
        return self.matrix[a:b + 1, x:y + 1], a, x

    def _cells(self, a, b, x, y) -> list[Pair]:
        blk, a0, x0 = self._block(a, b, x, y)
        return [Pair(int(r) + a0, int(c) + x0) for r, c in np.argwhere(blk)]

    def rel_acc(self, alpha, beta, x, y):
        return self._cells(alpha, beta, x, y)

    def rel_num(self, alpha, beta, x, y):
        return int(self._block(alpha, beta, x, y)[0].sum())

    def rel_sel_lab_fst(self, alpha, j, x, y):
        cells = self._cells(alpha, self.sigma, x, y)
        return cells[j - 1] if j <= len(cells) else None

    def rel_min_lab_fst(self, alpha, x, y, z):
        cand = self._cells(alpha, alpha, z, y) + self._cells(alpha + 1, self.sigma, x, y)
        return min(cand, key=label_major, default=None)

    def rel_sel_obj_fst(self, alpha, beta, x, j):
        cells = sorted(self._cells(alpha, beta, x, self.n), key=object_major)
        return cells[j - 1] if j <= len(cells) else None

    def rel_min_obj_fst(self, alpha, beta, gamma, x):
        cand = self._cells(gamma, beta, x, x) + self._cells(alpha, beta, x + 1, self.n)
        return min(cand, key=object_major, default=None)

    def rel_rnk(self, alpha, x):
        return self.rel_num(1, alpha, 1, x)

    def rel_rnk_lab_fst(self, alpha, x, y, z):
        return self.rel_num(1, alpha - 1, x, y) + self.rel_num(alpha, alpha, x, z)

    def rel_rnk_obj_fst(self, alpha, beta, gamma, x):
        return self.rel_num(alpha, beta, 1, x - 1) + self.rel_num(alpha, gamma, x, x)

    def lab_acc(self, alpha, beta, x, y):
        blk, a0, _ = self._block(alpha, beta, x, y)
        return [int(r) + a0 for r in np.flatnonzero(blk.any(axis=1))] if blk.size else []

    def lab_acc_one(self, alpha, beta, x):
        return self.lab_acc(alpha, beta, x, x)

    def lab_sel(self, alpha, j, x, y):
        labs = self.lab_acc(alpha, self.sigma, x, y)
        return labs[j - 1] if j <= len(labs) else None

    def lab_sel_one(self, alpha, j, x):
        return self.lab_sel(alpha, j, x, x)

    def lab_min(self, alpha, x, y):
        return self.lab_sel(alpha, 1, x, y)

    def lab_min_one(self, alpha, x):
        return self.lab_min(alpha, x, x)

    def lab_num(self, alpha, beta, x, y):
        return len(self.lab_acc(alpha, beta, x, y))

    def lab_rnk(self, alpha, x, y):
        return self.lab_num(1, alpha, x, y)

    def lab_rnk_one(self, alpha, x):
        return self.lab_rnk(alpha, x, x)

    def obj_acc(self, alpha, beta, x, y):
        blk, _, x0 = self._block(alpha, beta, x, y)
        return [int(c) + x0 for c in np.flatnonzero(blk.any(axis=0))] if blk.size else []

    def obj_acc_one(self, alpha, x, y):
        return self.obj_acc(alpha, alpha, x, y)

    def obj_sel(self, alpha, beta, x, j):
        objs = self.obj_acc(alpha, beta, x, self.n)
        return objs[j - 1] if j <= len(objs) else None

    def obj_sel_one(self, alpha, x, j):
        return self.obj_sel(alpha, alpha, x, j)

    def obj_min(self, alpha, beta, x):
        return self.obj_sel(alpha, beta, x, 1)

    def obj_min_one(self, alpha, x):
        return self.obj_min(alpha, alpha, x)

    def obj_num(self, alpha, beta, x, y):
        return len(self.obj_acc(alpha, beta, x, y))

    def obj_rnk(self, alpha, beta, x):
        return self.obj_num(alpha, beta, 1, x)

    def obj_rnk_one(self, alpha, x):
        return self.obj_rnk(alpha, alpha, x)


def build_naive(pairs: Iterable, dims: RelationDims | tuple[int, int]) -> NaiveRelation:
    """Oracle for ``pairs``; ``dims`` is RelationDims or (n, sigma)."""
    n, sigma = (dims.n, dims.sigma) if isinstance(dims, RelationDims) else dims
    return NaiveRelation(pairs, n, sigma)


def oracle_query(r: NaiveRelation, op: str, *args):
    return r.query(op, *args)


class RestrictedRelation(BinaryRelation):
    """Exposes only ``native`` ops of ``source``; the planner derives the rest."""

    def __init__(self, source: BinaryRelation, native: Iterable[str]):
        native = frozenset(native)
        for op in native:
            setattr(self, op, getattr(source, op))
        self.source = source
        super().__init__(source.dims, native=native)
