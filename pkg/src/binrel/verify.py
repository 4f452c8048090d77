"""Randomized and exhaustive cross-checks against the brute-force oracle."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .core import OPS, NaiveRelation, Pair

# ops whose ordinal ranges over the answers of a context query
ORDINAL_CONTEXT = {
    "rel_sel_lab_fst": lambda o, a, x, y: o.rel_num(a, o.sigma, x, y),
    "lab_sel": lambda o, a, x, y: o.lab_num(a, o.sigma, x, y),
    "lab_sel_one": lambda o, a, x: o.lab_num(a, o.sigma, x, x),
    "rel_sel_obj_fst": lambda o, a, b, x: o.rel_num(a, b, x, o.n),
    "obj_sel": lambda o, a, b, x: o.obj_num(a, b, x, o.n),
    "obj_sel_one": lambda o, a, x: o.obj_num(a, a, x, o.n),
}


def random_relation(rng: random.Random, n_range=(1, 64), sigma_range=(1, 64)):
    """(pairs, n, sigma) with t uniform in [0, n*sigma]."""
    n = rng.randint(*n_range)
    sigma = rng.randint(*sigma_range)
    cells = rng.sample(range(n * sigma), rng.randint(0, n * sigma))
    return [Pair(c // n + 1, c % n + 1) for c in cells], n, sigma


def _with_ordinals(op: str, oracle: NaiveRelation, rest: tuple) -> Iterator[tuple]:
    kinds = OPS[op][0]
    k = kinds.index("J")
    for j in range(1, ORDINAL_CONTEXT[op](oracle, *rest) + 2):
        yield rest[:k] + (j,) + rest[k:]


def exhaustive_args(op: str, oracle: NaiveRelation) -> Iterator[tuple]:
    """Every tuple with labels in [1, sigma] and objects in [1, n]; ordinals
    run from 1 to one past the number of candidates."""
    kinds = OPS[op][0]
    domains = [range(1, oracle.sigma + 1) if k == "L" else range(1, oracle.n + 1)
               for k in kinds if k != "J"]
    for rest in itertools.product(*domains):
        if "J" in kinds:
            yield from _with_ordinals(op, oracle, rest)
        else:
            yield rest


def random_args(op: str, oracle: NaiveRelation, rng: random.Random) -> tuple:
    """One tuple; mostly in range, now and then touching 0 or the far edge."""
    kinds = OPS[op][0]

    def value(top):
        r = rng.random()
        if r < 0.04:
            return 0
        if r < 0.08:
            return top + 1
        return rng.randint(1, top)

    rest = tuple(value(oracle.sigma if k == "L" else oracle.n) for k in kinds if k != "J")
    if "J" not in kinds:
        return rest
    bound = ORDINAL_CONTEXT[op](oracle, *[min(max(v, 0), 10**9) for v in rest])
    j = rng.randint(1, bound + 1) if rng.random() < 0.95 else bound + rng.randint(1, 50)
    k = kinds.index("J")
    return rest[:k] + (j,) + rest[k:]


def dump_pairs(pairs) -> str:
    return ",".join(f"{p[0]}:{p[1]}" for p in sorted(pairs)) or "-"


@dataclass
class Mismatch:
    structure: str
    op: str
    args: tuple
    expected: object
    got: object
    pairs: list
    n: int
    sigma: int

    def repro(self) -> str:
        return (f"mismatch structure={self.structure} n={self.n} sigma={self.sigma} "
                f"pairs={dump_pairs(self.pairs)} op={self.op} "
                f"args={' '.join(map(str, self.args))} expected={self.expected!r} got={self.got!r}")


@dataclass
class VerifyResult:
    passes: Counter = field(default_factory=Counter)
    mismatch: Optional[Mismatch] = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def check(structures: dict, oracle: NaiveRelation, op: str, args: tuple,
          result: VerifyResult) -> bool:
    """Compare every structure on one query; record the first mismatch."""
    expected = oracle.query(op, *args)
    for name, rel in structures.items():
        try:
            got = rel.query(op, *args)
        except Exception as exc:  # report crashes as mismatches too
            got = f"{type(exc).__name__}: {exc}"
        if got != expected:
            result.mismatch = Mismatch(name, op, args, expected, got,
                                       oracle.pairs, oracle.n, oracle.sigma)
            return False
    result.passes[op] += 1
    return True


def run_rounds(structures: dict, oracle: NaiveRelation, rounds: int, seed: int,
               ops=None) -> VerifyResult:
    """``rounds`` passes, each asking every op once with fresh random arguments."""
    rng = random.Random(seed)
    result = VerifyResult()
    ops = list(ops or OPS)
    for _ in range(rounds):
        for op in ops:
            if not check(structures, oracle, op, random_args(op, oracle, rng), result):
                return result
    return result


def run_exhaustive(structures: dict, oracle: NaiveRelation, ops=None) -> VerifyResult:
    result = VerifyResult()
    for op in ops or OPS:
        for args in exhaustive_args(op, oracle):
            if not check(structures, oracle, op, args, result):
                return result
    return result
