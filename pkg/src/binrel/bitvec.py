"""Plain bitvector with rank/select/access over 1-based positions.

Bits are packed LSB-first into 64-bit words. Two directory levels sit on
top: absolute one-counts every 512 bits (superblocks) and counts relative
to the superblock at every word (blocks). ``select`` binary-searches the
superblocks and then scans at most eight words.
"""

from __future__ import annotations

import struct
from bisect import bisect_left
from typing import Iterable, Optional

import numpy as np

WORD = 64
SUPER_WORDS = 8  # 512-bit superblocks
_MASK = (1 << WORD) - 1


class BitVector:
    """Immutable bit sequence B[1..length]."""

    __slots__ = ("length", "ones", "_words", "_sb", "_sb0", "_blk")

    def __init__(self, bits: Iterable[int] | str = ()):
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
        arr = arr.astype(np.uint8, copy=False).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("bitvector payload must contain only 0/1")
        n = int(arr.size)
        nwords = n // WORD + 1  # always one spare word so rank(length) needs no branch
        padded = np.zeros(nwords * WORD, dtype=np.uint8)
        padded[:n] = arr
        words = np.packbits(padded, bitorder="little").view("<u8")
        self._init(n, words)

    @classmethod
    def from_words(cls, length: int, words) -> "BitVector":
        """Rebuild from a packed payload; directories are recomputed."""
        nwords = length // WORD + 1
        buf = np.zeros(nwords, dtype="<u8")
        src = np.asarray(words, dtype="<u8")
        buf[: min(len(src), nwords)] = src[:nwords]
        tail = length % WORD
        # bits beyond ``length`` must be zero or rank/select would see them
        buf[length // WORD] &= np.uint64((1 << tail) - 1)
        buf[length // WORD + 1 :] = 0
        self = cls.__new__(cls)
        self._init(length, buf)
        return self

    def _init(self, n: int, words: np.ndarray) -> None:
        nwords = len(words)
        counts = np.bitwise_count(words).astype(np.int64)
        before = np.zeros(nwords + 1, dtype=np.int64)
        np.cumsum(counts, out=before[1:])
        sb = before[0:nwords:SUPER_WORDS]
        blk = before[:nwords] - np.repeat(sb, SUPER_WORDS)[:nwords]
        self.length = n
        self.ones = int(before[nwords])
        self._words = [int(w) for w in words.tolist()]
        self._sb = sb.tolist()
        self._sb0 = [s * SUPER_WORDS * WORD - c for s, c in enumerate(self._sb)]
        self._blk = blk.tolist()

    # -- fast unchecked primitives -------------------------------------

    def rank1(self, i: int) -> int:
        w = i >> 6
        r = self._sb[w >> 3] + self._blk[w]
        b = i & 63
        if b:
            r += (self._words[w] & ((1 << b) - 1)).bit_count()
        return r

    def rank0(self, i: int) -> int:
        return i - self.rank1(i)

    def select1(self, j: int) -> Optional[int]:
        if j < 1 or j > self.ones:
            return None
        s = bisect_left(self._sb, j) - 1
        j -= self._sb[s]
        w = s * SUPER_WORDS
        words = self._words
        c = words[w].bit_count()
        while j > c:
            j -= c
            w += 1
            c = words[w].bit_count()
        x = words[w]
        for _ in range(j - 1):
            x &= x - 1
        return (w << 6) + (x & -x).bit_length()

    def select0(self, j: int) -> Optional[int]:
        if j < 1 or j > self.length - self.ones:
            return None
        s = bisect_left(self._sb0, j) - 1
        j -= self._sb0[s]
        w = s * SUPER_WORDS
        words = self._words
        c = WORD - words[w].bit_count()
        while j > c:
            j -= c
            w += 1
            c = WORD - words[w].bit_count()
        x = ~words[w] & _MASK
        for _ in range(j - 1):
            x &= x - 1
        return (w << 6) + (x & -x).bit_length()

    def __getitem__(self, i: int) -> int:
        i -= 1
        return (self._words[i >> 6] >> (i & 63)) & 1

    # -- checked interface ---------------------------------------------

    def rank(self, bit: int, i: int) -> int:
        """Occurrences of ``bit`` in B[1..i]; ``rank(bit, 0) == 0``."""
        if not 0 <= i <= self.length:
            raise IndexError(f"rank position {i} outside [0, {self.length}]")
        r = self.rank1(i)
        return r if bit else i - r

    def select(self, bit: int, j: int) -> Optional[int]:
        """Position of the j-th ``bit``, or None when fewer exist."""
        if j < 1:
            raise ValueError("select ordinal must be >= 1")
        return self.select1(j) if bit else self.select0(j)

    def access(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"access position {i} outside [1, {self.length}]")
        return self[i]

    def range_rank(self, bit: int, x: int, y: int) -> int:
        """rank(bit, y) - rank(bit, x-1); zero for an empty range."""
        if not (1 <= x <= self.length + 1 and 0 <= y <= self.length):
            raise IndexError(f"range [{x}, {y}] outside [1, {self.length}]")
        if x > y:
            return 0
        return self.rank(bit, y) - self.rank(bit, x - 1)

    # -- misc ----------------------------------------------------------

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        for i in range(1, self.length + 1):
            yield self[i]

    def tolist(self) -> list[int]:
        return list(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and self._words == other._words

    def __hash__(self) -> int:
        return hash((self.length, tuple(self._words)))

    def __repr__(self) -> str:
        head = "".join(map(str, list(self)[:32]))
        more = "..." if self.length > 32 else ""
        return f"BitVector(length={self.length}, bits={head}{more})"

    def directories(self) -> tuple[list[int], list[int]]:
        return list(self._sb), list(self._blk)

    @property
    def payload_bits(self) -> int:
        return self.length

    @property
    def directory_bits(self) -> int:
        # 64-bit absolute superblock counts, 16-bit relative block counts
        return 64 * len(self._sb) + 16 * len(self._blk)

    # -- serialization -------------------------------------------------

    def to_bytes(self) -> bytes:
        nw = -(-self.length // WORD)
        return struct.pack("<Q", self.length) + np.asarray(
            self._words[:nw], dtype="<u8"
        ).tobytes()

    @classmethod
    def from_buffer(cls, buf: bytes | memoryview, offset: int = 0) -> tuple["BitVector", int]:
        """Decode one bitvector at ``offset``; returns it and the next offset."""
        (length,) = struct.unpack_from("<Q", buf, offset)
        offset += 8
        nw = -(-length // WORD)
        words = np.frombuffer(buf, dtype="<u8", count=nw, offset=offset)
        return cls.from_words(length, words), offset + 8 * nw
