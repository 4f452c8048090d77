"""Entropy and space accounting.

Measured sizes come from the structures themselves; payload (data bits)
and directories (rank/select/RMQ acceleration) are kept apart.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .core import RelationDims

LG_1_PLUS_SQRT2 = math.log2(1 + math.sqrt(2))
EXACT_LIMIT = 10_000
SLACK = 8


def entropy(dims: RelationDims) -> float:
    """lg C(n*sigma, t): bits to pick t cells out of the n x sigma grid."""
    cells, t = dims.n * dims.sigma, dims.t
    if not 0 <= t <= cells:
        raise ValueError(f"t={t} outside [0, {cells}]")
    if t in (0, cells):
        return 0.0
    if cells <= EXACT_LIMIT:
        return math.log2(math.comb(cells, t))
    return (math.lgamma(cells + 1) - math.lgamma(t + 1) - math.lgamma(cells - t + 1)) / math.log(2)


def zero_order(symbols: Iterable) -> float:
    """sum over symbols a of n_a * lg(n / n_a); total bits, not bits per symbol."""
    counts = Counter(symbols)
    total = sum(counts.values())
    return sum(c * math.log2(total / c) for c in counts.values())


def wt_payload_formula(dims: RelationDims) -> int:
    """t * ceil(lg sigma) + (n + t)."""
    return dims.t * (dims.sigma - 1).bit_length() + dims.n + dims.t


def brwt_ideal_size(b) -> float:
    """2n raw bits for the root plus, per other internal node, the zero-order
    size of its (BL, BR) bit pairs read as one sequence over {01, 10, 11}."""
    total = 2.0 * b.n
    for v in b.internal_nodes():
        if v is b.root:
            continue
        total += zero_order(zip(v.BL, v.BR))
    return total


def brwt_bound(dims: RelationDims, factor: float = LG_1_PLUS_SQRT2, slack: int = SLACK) -> float:
    return factor * entropy(dims) + slack * (dims.t + dims.n + dims.sigma)


@dataclass
class SpaceReport:
    dims: RelationDims
    entropy_bits: float
    h0_S_bits: float
    payload_bits: dict[str, int] = field(default_factory=dict)
    directory_bits: dict[str, int] = field(default_factory=dict)
    brwt_ideal_bits: float | None = None
    brwt_bound_bits: float | None = None

    @property
    def brwt_within_bound(self) -> bool | None:
        if self.brwt_ideal_bits is None:
            return None
        return self.brwt_ideal_bits <= self.brwt_bound_bits

    def metrics(self) -> list[tuple[str, object]]:
        d = self.dims
        rows: list[tuple[str, object]] = [
            ("n", d.n), ("sigma", d.sigma), ("t", d.t),
            ("entropy_bits", round(self.entropy_bits, 4)),
            ("h0_S_bits", round(self.h0_S_bits, 4)),
            ("wt_formula_bits", wt_payload_formula(d)),
        ]
        for name in self.payload_bits:
            rows.append((f"payload_bits.{name}", self.payload_bits[name]))
            rows.append((f"directory_bits.{name}", self.directory_bits[name]))
        if self.brwt_ideal_bits is not None:
            rows.append(("brwt_ideal_bits", round(self.brwt_ideal_bits, 4)))
            rows.append(("brwt_bound_bits", round(self.brwt_bound_bits, 4)))
            rows.append(("brwt_within_bound", self.brwt_within_bound))
        return rows

    def to_text(self) -> str:
        rows = self.metrics()
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)

    def to_kv(self) -> str:
        return "\n".join(f"{k}={v}" for k, v in self.metrics())


def report(dims: RelationDims, labels_object_major: Iterable[int], structures: dict) -> SpaceReport:
    """Space figures for one relation and any built representations.

    ``structures`` maps a display name to a structure exposing
    ``payload_bits`` and ``directory_bits``; a BRWT entry also gets the
    ideal-size comparison.
    """
    rep = SpaceReport(dims, entropy(dims), zero_order(labels_object_major))
    for name, s in structures.items():
        rep.payload_bits[name] = s.payload_bits
        rep.directory_bits[name] = s.directory_bits
        if hasattr(s, "row_unary") and rep.brwt_ideal_bits is None:
            rep.brwt_ideal_bits = brwt_ideal_size(s)
            rep.brwt_bound_bits = brwt_bound(dims)
    return rep
