"""Bit strings over {0,1}: indel distances and block-structure decomposition.

Everything here is a pure function over immutable values, so unrestricted
concurrent use is safe.  Bit strings serialize as ASCII '0'/'1' text with no
separators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "BitString",
    "Bits",
    "Block",
    "BlockDecomposition",
    "WeightMismatchError",
    "bits_of",
    "hamming_distance",
    "edit_distance",
    "edit_distance_within",
    "block_decompose",
]

Bits = Union["BitString", str]


@dataclass(frozen=True, slots=True)
class BitString:
    """Immutable sequence over {0,1}.  Positions are 0-based, x[0] first."""

    bits: str = ""

    def __post_init__(self) -> None:
        if self.bits.strip("01"):
            raise ValueError(f"bit string may contain only '0' and '1': {self.bits!r}")

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return BitString(self.bits[index])
        return 1 if self.bits[index] == "1" else 0

    def __iter__(self) -> Iterator[int]:
        return (1 if c == "1" else 0 for c in self.bits)

    def __str__(self) -> str:
        return self.bits

    def __add__(self, other: Bits) -> "BitString":
        return BitString(self.bits + bits_of(other))

    @property
    def weight(self) -> int:
        """Number of ones."""
        return self.bits.count("1")

    def ones(self) -> tuple[int, ...]:
        """Positions carrying a 1, in increasing order."""
        return tuple(i for i, c in enumerate(self.bits) if c == "1")

    @staticmethod
    def random(length: int, seed: int) -> "BitString":
        rng = random.Random(seed)
        return BitString("".join(rng.choice("01") for _ in range(length)))


def bits_of(value: Bits) -> str:
    """Return the raw '0'/'1' text of a bit string, validating plain str input."""
    if isinstance(value, BitString):
        return value.bits
    return BitString(value).bits


class WeightMismatchError(ValueError):
    """The two strings have different Hamming weights.

    Such a pair is trivially distinguishable (the expected trace weights
    differ by q per extra one), so no block decomposition is attempted.
    """


def hamming_distance(x: Bits, y: Bits) -> int:
    """Number of positions where the equal-length strings differ."""
    xs, ys = bits_of(x), bits_of(y)
    if len(xs) != len(ys):
        raise ValueError(f"unequal lengths: {len(xs)} vs {len(ys)}")
    return sum(a != b for a, b in zip(xs, ys))


def _lcs_length(a: str, b: str) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for ch in a:
        cur = [0]
        for j, bj in enumerate(b, start=1):
            if ch == bj:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def edit_distance(x: Bits, y: Bits) -> int:
    """Indel edit distance (insertions and deletions only, no substitutions).

    Equals ``len(x) + len(y) - 2 * LCS(x, y)``.  Lengths may differ.
    """
    xs, ys = bits_of(x), bits_of(y)
    return len(xs) + len(ys) - 2 * _lcs_length(xs, ys)


def edit_distance_within(x: Bits, y: Bits, limit: int) -> int | None:
    """Indel distance if it is <= limit, else None.

    Banded dynamic program over the diagonal strip |j - i| <= limit; costs
    O(len * limit) instead of O(len^2), which matters when verifying the
    long generated pairs.
    """
    xs, ys = bits_of(x), bits_of(y)
    if limit < 0:
        return None
    m, n = len(xs), len(ys)
    if abs(m - n) > limit:
        return None
    width = 2 * limit + 1
    inf = limit + 1
    # row[d] holds D(i, j) with j = i + d - limit
    row = [d - limit if limit <= d <= 2 * limit else inf for d in range(width)]
    for i in range(1, m + 1):
        cur = [inf] * width
        for d in range(width):
            j = i + d - limit
            if j < 0 or j > n:
                continue
            if j == 0:
                cur[d] = i if i <= limit else inf
                continue
            best = inf
            if xs[i - 1] == ys[j - 1] and row[d] < best:
                best = row[d]
            if d + 1 < width and row[d + 1] + 1 < best:  # delete x_i
                best = row[d + 1] + 1
            if d - 1 >= 0 and cur[d - 1] + 1 < best:  # insert y_j
                best = cur[d - 1] + 1
            cur[d] = best
        row = cur
    result = row[n - m + limit]
    return result if result <= limit else None


# ---------------------------------------------------------------------------
# Block structure
# ---------------------------------------------------------------------------
#
# A pair (x, y) of equal-length strings may decompose into contiguous blocks
# x = x_1 ... x_d, y = y_1 ... y_d (equal lengths per block) where every block
# matches one of five patterns, for a single bit a/b and a shared string s:
#
#   case 1:  x_i = y_i
#   case 2:  x_i = a s      y_i = s b
#   case 3:  x_i = s a      y_i = b s
#   case 4:  x_i = a s      y_i = b s     with a != b
#   case 5:  x_i = s a      y_i = s b     with a != b
#
# Any pair admitting such a decomposition with d blocks is within edit
# distance 2d.


@dataclass(frozen=True, slots=True)
class Block:
    start: int
    length: int
    case: int
    x_seg: str
    y_seg: str
    shared: str | None  # s for cases 2-5, None for case 1
    x_bit: int | None  # a for cases 2-5
    y_bit: int | None  # b for cases 2-5


@dataclass(frozen=True, slots=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(b.case for b in self.blocks)

    @property
    def starts(self) -> tuple[int, ...]:
        """Start indices t_1 .. t_{d+1}; the last entry equals n."""
        out = [b.start for b in self.blocks]
        out.append(self.blocks[-1].start + self.blocks[-1].length if self.blocks else 0)
        return tuple(out)

    def validate(self, x: Bits, y: Bits) -> None:
        """Raise ValueError unless this decomposition exactly describes (x, y)."""
        xs, ys = bits_of(x), bits_of(y)
        pos = 0
        for blk in self.blocks:
            if blk.start != pos or blk.length <= 0:
                raise ValueError("blocks must tile the strings with positive lengths")
            end = pos + blk.length
            if xs[pos:end] != blk.x_seg or ys[pos:end] != blk.y_seg:
                raise ValueError("block segments do not match the strings")
            if _segment_case(xs, ys, pos, end, blk.case) is None:
                raise ValueError(f"segment does not match case {blk.case}")
            if blk.case in (4, 5) and blk.x_bit == blk.y_bit:
                raise ValueError("cases 4 and 5 require distinct bits")
            pos = end
        if pos != len(xs) or len(xs) != len(ys):
            raise ValueError("blocks do not cover the strings")


def _segment_case(xs: str, ys: str, i: int, j: int, case: int):
    """Match x[i:j], y[i:j] against one case; return (shared, a, b) or None."""
    if case == 1:
        return (None, None, None) if xs[i:j] == ys[i:j] else None
    if case == 2:
        if xs[i + 1:j] == ys[i:j - 1]:
            return (xs[i + 1:j], int(xs[i]), int(ys[j - 1]))
        return None
    if case == 3:
        if xs[i:j - 1] == ys[i + 1:j]:
            return (xs[i:j - 1], int(xs[j - 1]), int(ys[i]))
        return None
    if case == 4:
        if xs[i] != ys[i] and xs[i + 1:j] == ys[i + 1:j]:
            return (xs[i + 1:j], int(xs[i]), int(ys[i]))
        return None
    if case == 5:
        if xs[j - 1] != ys[j - 1] and xs[i:j - 1] == ys[i:j - 1]:
            return (xs[i:j - 1], int(xs[j - 1]), int(ys[j - 1]))
        return None
    raise ValueError(f"unknown case label {case}")


def block_decompose(x: Bits, y: Bits, d_max: int) -> BlockDecomposition | None:
    """Best block decomposition of (x, y) into at most d_max blocks, or None.

    "Best" means: fewest blocks; ties broken by the lexicographically
    smallest case-label sequence (case 1 preferred, then lower case numbers,
    decided at the earliest block); remaining ties by the longest earliest
    block.  The same total order is used by the brute-force test oracle.

    Raises WeightMismatchError when the Hamming weights differ, since such a
    pair is trivially distinguishable and the decomposition would certify
    nothing.
    """
    xs, ys = bits_of(x), bits_of(y)
    if len(xs) != len(ys):
        raise ValueError(f"unequal lengths: {len(xs)} vs {len(ys)}")
    if xs.count("1") != ys.count("1"):
        raise WeightMismatchError(
            "Hamming weights differ; the pair is trivially distinguishable"
        )
    n = len(xs)
    if n == 0:
        return BlockDecomposition(())
    if d_max < 1:
        return None

    # best[i]: minimal (blocks, labels, -lengths) key for the suffix from i,
    # together with the first move (case, end) realizing it.
    best: list[tuple[tuple, int, int] | None] = [None] * (n + 1)
    best[n] = ((0, (), ()), 0, n)
    for i in range(n - 1, -1, -1):
        winner = None
        for j in range(i + 1, n + 1):
            for case in (1, 2, 3, 4, 5):
                if _segment_case(xs, ys, i, j, case) is None:
                    continue
                tail = best[j]
                if tail is None:
                    continue
                blocks = tail[0][0] + 1
                if blocks > d_max:
                    continue
                key = (blocks, (case,) + tail[0][1], (i - j,) + tail[0][2])
                if winner is None or key < winner[0]:
                    winner = (key, case, j)
        best[i] = winner
    if best[0] is None:
        return None

    blocks: list[Block] = []
    i = 0
    while i < n:
        _, case, j = best[i]  # type: ignore[misc]
        shared, a, b = _segment_case(xs, ys, i, j, case)
        blocks.append(
            Block(
                start=i,
                length=j - i,
                case=case,
                x_seg=xs[i:j],
                y_seg=ys[i:j],
                shared=shared,
                x_bit=a,
                y_bit=b,
            )
        )
        i = j
    return BlockDecomposition(tuple(blocks))
