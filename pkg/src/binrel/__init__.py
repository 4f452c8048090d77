"""Compact representations of binary relations between labels and objects."""

from .brwt import Brwt
from .build import REPRESENTATIONS, STANDARD_CONFIGS, BuildConfig, build
from .core import OPS, BinaryRelation, NaiveRelation, Pair, QueryError, RelationDims
from .rel_gwt import BinRelGwt, GeneralizedWaveletTree
from .rel_str import BinRelStr
from .rel_wt import BinRelWt
from .serialize import dumps, load, loads, save

__all__ = [
    "OPS", "BinaryRelation", "BinRelGwt", "BinRelStr", "BinRelWt", "Brwt",
    "BuildConfig", "GeneralizedWaveletTree", "NaiveRelation", "Pair", "QueryError",
    "REPRESENTATIONS", "RelationDims", "STANDARD_CONFIGS", "build", "dumps",
    "load", "loads", "save",
]
