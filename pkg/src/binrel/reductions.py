"""Derivations of every query from smaller query sets.

Each :class:`Edge` computes one operation using only its source
operations. Given the operations a representation answers natively,
:func:`plan` picks one edge per missing operation, cheapest first, in an
order that guarantees the chosen edges never call back into themselves.

Costs are rough work estimates: 1 for definitional rewrites, 2-3 for
loops over the output or over an ordinal, 5 for binary searches.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable

from .core import OPS, Pair, label_major, object_major


class ConfigurationError(RuntimeError):
    """Some operation cannot be derived from the native set."""


@dataclass(frozen=True)
class Edge:
    name: str
    target: str
    sources: tuple[str, ...]
    fn: Callable
    cost: int = 1


EDGES: list[Edge] = []


def edge(target: str, *sources: str, cost: int = 1, name: str = ""):
    def register(fn):
        EDGES.append(Edge(name or fn.__name__, target, sources, fn, cost))
        return fn
    return register


def _labs(r, a, b):
    return max(a, 1), min(b, r.sigma)


def _objs(r, x, y):
    return max(x, 1), min(y, r.n)


def _first_true(lo: int, hi: int, pred) -> int:
    """Smallest k in [lo, hi] with pred(k) true; hi + 1 when none (pred monotone)."""
    hi += 1
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


@edge("rel_num", "rel_acc")
def rel_num_from_acc(r, alpha, beta, x, y):
    return len(r.rel_acc(alpha, beta, x, y))


@edge("rel_num", "rel_rnk")
def rel_num_from_rnk(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    if alpha > beta or x > y:
        return 0
    return (r.rel_rnk(beta, y) - r.rel_rnk(alpha - 1, y)
            - r.rel_rnk(beta, x - 1) + r.rel_rnk(alpha - 1, x - 1))


@edge("rel_num", "rel_rnk_lab_fst")
def rel_num_from_rnk_lab_fst(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    if alpha > beta or x > y:
        return 0
    return r.rel_rnk_lab_fst(beta, x, y, y) - r.rel_rnk_lab_fst(alpha - 1, x, y, y)


@edge("rel_num", "rel_rnk_obj_fst")
def rel_num_from_rnk_obj_fst(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    if alpha > beta or x > y:
        return 0
    return r.rel_rnk_obj_fst(alpha, beta, beta, y) - r.rel_rnk_obj_fst(alpha, beta, beta, x - 1)


@edge("rel_rnk", "rel_num")
def rel_rnk_from_num(r, alpha, x):
    return r.rel_num(1, alpha, 1, x)


@edge("rel_rnk_lab_fst", "rel_num", cost=2)
def rel_rnk_lab_fst_from_num(r, alpha, x, y, z):
    return r.rel_num(1, alpha - 1, x, y) + r.rel_num(alpha, alpha, x, z)


@edge("rel_rnk_obj_fst", "rel_num", cost=2)
def rel_rnk_obj_fst_from_num(r, alpha, beta, gamma, x):
    return r.rel_num(alpha, beta, 1, x - 1) + r.rel_num(alpha, gamma, x, x)


def _count_upto(sel, limit, bound, key) -> int:
    """Largest j with sel(j) present and key(sel(j)) <= bound."""

    def beyond(j):
        p = sel(j)
        return p is None or key(p) > bound

    return _first_true(1, limit, beyond) - 1


@edge("rel_rnk_lab_fst", "rel_sel_lab_fst", cost=5)
def rel_rnk_lab_fst_by_search(r, alpha, x, y, z):
    # pairs of relacc(1,sigma,x,y) up to (alpha, z), plus row alpha past y
    x, y = _objs(r, x, y)
    total = 0
    if x <= y:
        total = _count_upto(lambda j: r.rel_sel_lab_fst(1, j, x, y), r.t,
                            (alpha, min(y, z)), label_major)
    if z > y and 1 <= alpha <= r.sigma:
        lo, hi = max(x, y + 1), min(z, r.n)
        if lo <= hi:
            total += _count_upto(lambda j: r.rel_sel_lab_fst(alpha, j, lo, hi), r.t,
                                 (alpha, hi), label_major)
    return total


@edge("rel_rnk_obj_fst", "rel_sel_obj_fst", cost=5)
def rel_rnk_obj_fst_by_search(r, alpha, beta, gamma, x):
    # pairs of relacc(alpha,beta,1,n) up to (x, gamma), plus column x past beta
    alpha, beta = _labs(r, alpha, beta)
    total = 0
    if alpha <= beta:
        total = _count_upto(lambda j: r.rel_sel_obj_fst(alpha, beta, 1, j), r.t,
                            (x, min(beta, gamma)), object_major)
    if gamma > beta and 1 <= x <= r.n:
        lo, hi = max(alpha, beta + 1), min(gamma, r.sigma)
        if lo <= hi:
            total += _count_upto(lambda j: r.rel_sel_obj_fst(lo, hi, x, j), r.t,
                                 (x, hi), object_major)
    return total


@edge("lab_num", "lab_acc")
def lab_num_from_acc(r, alpha, beta, x, y):
    return len(r.lab_acc(alpha, beta, x, y))


@edge("lab_num", "rel_num", cost=3)
def lab_num_by_rows(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    return sum(1 for a in range(alpha, beta + 1) if r.rel_num(a, a, x, y))


@edge("lab_num", "lab_sel", cost=5)
def lab_num_by_search(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    if alpha > beta:
        return 0

    def beyond(j):
        a = r.lab_sel(alpha, j, x, y)
        return a is None or a > beta

    return _first_true(1, beta - alpha + 1, beyond) - 1


@edge("lab_rnk", "lab_num")
def lab_rnk_from_num(r, alpha, x, y):
    return r.lab_num(1, alpha, x, y)


@edge("lab_rnk_one", "lab_rnk")
def lab_rnk_one_from_rnk(r, alpha, x):
    return r.lab_rnk(alpha, x, x)


@edge("lab_rnk_one", "rel_num")
def lab_rnk_one_from_rel_num(r, alpha, x):
    # within one column every pair has a distinct label
    return r.rel_num(1, alpha, x, x)


@edge("obj_num", "obj_acc")
def obj_num_from_acc(r, alpha, beta, x, y):
    return len(r.obj_acc(alpha, beta, x, y))


@edge("obj_num", "rel_num", cost=3)
def obj_num_by_columns(r, alpha, beta, x, y):
    x, y = _objs(r, x, y)
    return sum(1 for z in range(x, y + 1) if r.rel_num(alpha, beta, z, z))


@edge("obj_num", "obj_sel", cost=5)
def obj_num_by_search(r, alpha, beta, x, y):
    x, y = _objs(r, x, y)
    if x > y:
        return 0

    def beyond(j):
        o = r.obj_sel(alpha, beta, x, j)
        return o is None or o > y

    return _first_true(1, y - x + 1, beyond) - 1


@edge("obj_rnk", "obj_num")
def obj_rnk_from_num(r, alpha, beta, x):
    return r.obj_num(alpha, beta, 1, x)


@edge("obj_rnk_one", "obj_rnk")
def obj_rnk_one_from_rnk(r, alpha, x):
    return r.obj_rnk(alpha, alpha, x)


@edge("obj_rnk_one", "rel_num")
def obj_rnk_one_from_rel_num(r, alpha, x):
    # within one row every pair has a distinct object
    return r.rel_num(alpha, alpha, 1, x)


# ---------------------------------------------------------------------------
# listing
# ---------------------------------------------------------------------------


@edge("rel_acc", "rel_min_lab_fst", cost=2)
def rel_acc_by_label_minima(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    out = []
    if alpha > beta or x > y:
        return out
    p = r.rel_min_lab_fst(alpha, x, y, x)
    while p is not None and p.label <= beta:
        out.append(p)
        p = r.rel_min_lab_fst(p.label, x, y, p.object + 1)
    return out


@edge("rel_acc", "rel_min_obj_fst", cost=2)
def rel_acc_by_object_minima(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    out = []
    if alpha > beta or x > y:
        return out
    p = r.rel_min_obj_fst(alpha, beta, alpha, x)
    while p is not None and p.object <= y:
        out.append(p)
        p = r.rel_min_obj_fst(alpha, beta, p.label + 1, p.object)
    return out


@edge("lab_acc", "rel_acc", cost=2)
def lab_acc_from_rel_acc(r, alpha, beta, x, y):
    return sorted({p.label for p in r.rel_acc(alpha, beta, x, y)})


@edge("lab_acc", "lab_min", cost=2)
def lab_acc_by_minima(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    out = []
    if x > y:
        return out
    a = r.lab_min(alpha, x, y) if alpha <= beta else None
    while a is not None and a <= beta:
        out.append(a)
        a = r.lab_min(a + 1, x, y)
    return out


@edge("lab_acc_one", "lab_acc")
def lab_acc_one_from_acc(r, alpha, beta, x):
    return r.lab_acc(alpha, beta, x, x)


@edge("lab_acc_one", "rel_acc", cost=2)
def lab_acc_one_from_rel_acc(r, alpha, beta, x):
    return [p.label for p in r.rel_acc(alpha, beta, x, x)]


@edge("lab_acc_one", "lab_min_one", cost=2)
def lab_acc_one_by_minima(r, alpha, beta, x):
    alpha, beta = _labs(r, alpha, beta)
    out = []
    if not 1 <= x <= r.n:
        return out
    a = r.lab_min_one(alpha, x) if alpha <= beta else None
    while a is not None and a <= beta:
        out.append(a)
        a = r.lab_min_one(a + 1, x)
    return out


@edge("obj_acc", "rel_acc", cost=2)
def obj_acc_from_rel_acc(r, alpha, beta, x, y):
    return sorted({p.object for p in r.rel_acc(alpha, beta, x, y)})


@edge("obj_acc", "obj_min", cost=2)
def obj_acc_by_minima(r, alpha, beta, x, y):
    alpha, beta = _labs(r, alpha, beta)
    x, y = _objs(r, x, y)
    out = []
    if alpha > beta:
        return out
    o = r.obj_min(alpha, beta, x) if x <= y else None
    while o is not None and o <= y:
        out.append(o)
        o = r.obj_min(alpha, beta, o + 1)
    return out


@edge("obj_acc_one", "obj_acc")
def obj_acc_one_from_acc(r, alpha, x, y):
    return r.obj_acc(alpha, alpha, x, y)


@edge("obj_acc_one", "rel_acc", cost=2)
def obj_acc_one_from_rel_acc(r, alpha, x, y):
    return [p.object for p in r.rel_acc(alpha, alpha, x, y)]


@edge("obj_acc_one", "obj_min_one", cost=2)
def obj_acc_one_by_minima(r, alpha, x, y):
    x, y = _objs(r, x, y)
    out = []
    if not 1 <= alpha <= r.sigma:
        return out
    o = r.obj_min_one(alpha, x) if x <= y else None
    while o is not None and o <= y:
        out.append(o)
        o = r.obj_min_one(alpha, o + 1)
    return out


# ---------------------------------------------------------------------------
# selection and minima
# ---------------------------------------------------------------------------


@edge("rel_min_lab_fst", "rel_sel_lab_fst")
def rel_min_lab_fst_from_sel(r, alpha, x, y, z):
    p = r.rel_sel_lab_fst(alpha, 1, z, y)
    if p is not None and p.label == alpha:
        return p
    return r.rel_sel_lab_fst(alpha + 1, 1, x, y)


@edge("rel_min_obj_fst", "rel_sel_obj_fst")
def rel_min_obj_fst_from_sel(r, alpha, beta, gamma, x):
    if 1 <= x <= r.n:
        p = r.rel_sel_obj_fst(gamma, beta, x, 1)
        if p is not None and p.object == x:
            return p
    return r.rel_sel_obj_fst(alpha, beta, x + 1, 1)


@edge("rel_sel_lab_fst", "rel_min_lab_fst", cost=3)
def rel_sel_lab_fst_by_minima(r, alpha, j, x, y):
    p = r.rel_min_lab_fst(alpha, x, y, x)
    for _ in range(j - 1):
        if p is None:
            break
        p = r.rel_min_lab_fst(p.label, x, y, p.object + 1)
    return p


@edge("rel_sel_obj_fst", "rel_min_obj_fst", cost=3)
def rel_sel_obj_fst_by_minima(r, alpha, beta, x, j):
    p = r.rel_min_obj_fst(alpha, beta, alpha, x)
    for _ in range(j - 1):
        if p is None:
            break
        p = r.rel_min_obj_fst(alpha, beta, p.label + 1, p.object)
    return p


@edge("rel_sel_lab_fst", "rel_rnk_lab_fst", cost=5)
def rel_sel_lab_fst_by_search(r, alpha, j, x, y):
    alpha = max(alpha, 1)
    x, y = _objs(r, x, y)
    if alpha > r.sigma or x > y:
        return None
    width = y - x + 1
    goal = r.rel_rnk_lab_fst(alpha - 1, x, y, y) + j

    def cell(k):
        return alpha + k // width, x + k % width

    def reached(k):
        a, w = cell(k)
        return r.rel_rnk_lab_fst(a, x, y, w) >= goal

    last = (r.sigma - alpha + 1) * width - 1
    k = _first_true(0, last, reached)
    return Pair(*cell(k)) if k <= last else None


@edge("rel_sel_obj_fst", "rel_rnk_obj_fst", cost=5)
def rel_sel_obj_fst_by_search(r, alpha, beta, x, j):
    alpha, beta = _labs(r, alpha, beta)
    x = max(x, 1)
    if alpha > beta or x > r.n:
        return None
    height = beta - alpha + 1
    goal = r.rel_rnk_obj_fst(alpha, beta, alpha - 1, x) + j

    def cell(k):
        return alpha + k % height, x + k // height

    def reached(k):
        a, w = cell(k)
        return r.rel_rnk_obj_fst(alpha, beta, a, w) >= goal

    last = (r.n - x + 1) * height - 1
    k = _first_true(0, last, reached)
    return Pair(*cell(k)) if k <= last else None


@edge("lab_sel", "lab_min", cost=3)
def lab_sel_by_minima(r, alpha, j, x, y):
    a = r.lab_min(alpha, x, y)
    for _ in range(j - 1):
        if a is None:
            break
        a = r.lab_min(a + 1, x, y)
    return a


@edge("lab_sel", "lab_num", cost=5)
def lab_sel_by_search(r, alpha, j, x, y):
    alpha = max(alpha, 1)
    if alpha > r.sigma:
        return None
    g = _first_true(alpha, r.sigma, lambda b: r.lab_num(alpha, b, x, y) >= j)
    return g if g <= r.sigma else None


@edge("lab_sel_one", "lab_sel")
def lab_sel_one_from_sel(r, alpha, j, x):
    return r.lab_sel(alpha, j, x, x)


@edge("lab_sel_one", "rel_sel_lab_fst")
def lab_sel_one_from_pairs(r, alpha, j, x):
    p = r.rel_sel_lab_fst(alpha, j, x, x)
    return None if p is None else p.label


@edge("lab_sel_one", "lab_min_one", cost=3)
def lab_sel_one_by_minima(r, alpha, j, x):
    a = r.lab_min_one(alpha, x)
    for _ in range(j - 1):
        if a is None:
            break
        a = r.lab_min_one(a + 1, x)
    return a


@edge("lab_min", "lab_sel")
def lab_min_from_sel(r, alpha, x, y):
    return r.lab_sel(alpha, 1, x, y)


@edge("lab_min", "rel_min_lab_fst")
def lab_min_from_pairs(r, alpha, x, y):
    p = r.rel_min_lab_fst(alpha, x, y, x)
    return None if p is None else p.label


@edge("lab_min_one", "lab_min")
def lab_min_one_from_min(r, alpha, x):
    return r.lab_min(alpha, x, x)


@edge("lab_min_one", "lab_sel_one")
def lab_min_one_from_sel(r, alpha, x):
    return r.lab_sel_one(alpha, 1, x)


@edge("obj_sel", "obj_min", cost=3)
def obj_sel_by_minima(r, alpha, beta, x, j):
    o = r.obj_min(alpha, beta, x)
    for _ in range(j - 1):
        if o is None:
            break
        o = r.obj_min(alpha, beta, o + 1)
    return o


@edge("obj_sel", "obj_num", cost=5)
def obj_sel_by_search(r, alpha, beta, x, j):
    x = max(x, 1)
    if x > r.n:
        return None
    w = _first_true(x, r.n, lambda y: r.obj_num(alpha, beta, x, y) >= j)
    return w if w <= r.n else None


@edge("obj_sel_one", "obj_sel")
def obj_sel_one_from_sel(r, alpha, x, j):
    return r.obj_sel(alpha, alpha, x, j)


@edge("obj_sel_one", "rel_sel_obj_fst")
def obj_sel_one_from_pairs(r, alpha, x, j):
    p = r.rel_sel_obj_fst(alpha, alpha, x, j)
    return None if p is None else p.object


@edge("obj_sel_one", "obj_min_one", cost=3)
def obj_sel_one_by_minima(r, alpha, x, j):
    o = r.obj_min_one(alpha, x)
    for _ in range(j - 1):
        if o is None:
            break
        o = r.obj_min_one(alpha, o + 1)
    return o


@edge("obj_min", "obj_sel")
def obj_min_from_sel(r, alpha, beta, x):
    return r.obj_sel(alpha, beta, x, 1)


@edge("obj_min", "rel_min_obj_fst")
def obj_min_from_pairs(r, alpha, beta, x):
    p = r.rel_min_obj_fst(alpha, beta, alpha, x)
    return None if p is None else p.object


@edge("obj_min_one", "obj_min")
def obj_min_one_from_min(r, alpha, x):
    return r.obj_min(alpha, alpha, x)


@edge("obj_min_one", "obj_sel_one")
def obj_min_one_from_sel(r, alpha, x):
    return r.obj_sel_one(alpha, x, 1)


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


def edges_into(op: str) -> list[Edge]:
    return [e for e in EDGES if e.target == op]


def plan(native) -> dict[str, Edge]:
    """Choose one edge per non-native operation.

    Operations are settled cheapest-first; an edge is eligible only once all
    of its sources are settled, so the resulting call graph is acyclic.
    """
    native = frozenset(native)
    unknown = native - OPS.keys()
    if unknown:
        raise ConfigurationError(f"unknown native operations: {sorted(unknown)}")
    dist = {op: 0 for op in native}
    chosen: dict[str, Edge] = {}
    heap = []
    order = {e.name: i for i, e in enumerate(EDGES)}

    def push_ready():
        for e in EDGES:
            if e.target not in dist and all(s in dist for s in e.sources):
                heapq.heappush(heap, (e.cost + sum(dist[s] for s in e.sources), order[e.name], e))

    push_ready()
    while heap:
        d, _, e = heapq.heappop(heap)
        if e.target in dist:
            continue
        dist[e.target] = d
        chosen[e.target] = e
        push_ready()
    missing = sorted(OPS.keys() - dist.keys())
    if missing:
        raise ConfigurationError(
            f"native set {sorted(native)} cannot derive: {', '.join(missing)}")
    return chosen
