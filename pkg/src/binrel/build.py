"""Build any representation from a pair list, by tag and options."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .brwt import Brwt
from .core import BinaryRelation
from .rel_gwt import DEFAULT_ARITY, BinRelGwt
from .rel_str import BinRelStr
from .rel_wt import BinRelWt

REPRESENTATIONS = ("str", "wt", "gwt", "brwt")


@dataclass(frozen=True)
class BuildConfig:
    """Which representation to build.

    ``arity`` and ``bands`` apply to gwt only; ``sequence`` picks the
    sequence structure behind str ("wt" or "gwt").
    """

    repr: str = "wt"
    arity: int = DEFAULT_ARITY
    bands: str = "all"
    sequence: str = "wt"

    def __post_init__(self):
        if self.repr not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.repr!r}; expected one of {REPRESENTATIONS}")
        if self.arity < 2:
            raise ValueError("arity must be >= 2")

    @property
    def name(self) -> str:
        if self.repr == "gwt":
            return f"gwt{self.arity}"
        if self.repr == "str" and self.sequence != "wt":
            return f"str-{self.sequence}"
        return self.repr


# the seven configurations the cross-checks run over
STANDARD_CONFIGS = (
    BuildConfig("str"),
    BuildConfig("wt"),
    BuildConfig("gwt", arity=2),
    BuildConfig("gwt", arity=4),
    BuildConfig("gwt", arity=8),
    BuildConfig("gwt", arity=16),
    BuildConfig("brwt"),
)


def build(config: BuildConfig | str, pairs: Iterable, n: int, sigma: int) -> BinaryRelation:
    if isinstance(config, str):
        config = BuildConfig(config)
    pairs = list(pairs)
    if config.repr == "str":
        opts = {"mu": config.arity, "bands": config.bands} if config.sequence == "gwt" else {}
        return BinRelStr(pairs, n, sigma, sequence=config.sequence, **opts)
    if config.repr == "wt":
        return BinRelWt(pairs, n, sigma)
    if config.repr == "gwt":
        return BinRelGwt(pairs, n, sigma, mu=config.arity, bands=config.bands)
    return Brwt(pairs, n, sigma)
