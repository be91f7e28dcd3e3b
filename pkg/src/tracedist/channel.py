"""Deletion-channel simulation and exact or empirical mean profiles.

Sampling is counter-based: the coin for bit i of trace t is a pure function
of (seed, t, i), so any parallel schedule reproduces the same traces and
batches are embarrassingly parallel.  Exact computations use rational
arithmetic whenever the channel probability is exact.

Trace files are plain text: a header line ``# n=<n> p=<p> seed=<seed>``
followed by one ASCII '0'/'1' trace per line.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from .polynomial import CircleParams
from .strings import BitString, Bits, bits_of

__all__ = [
    "MeanProfile",
    "TraceBatch",
    "sample_trace",
    "sample_batch",
    "exact_mean_profile",
    "empirical_mean_profile",
    "exact_potential_expectation",
    "write_trace_file",
    "read_trace_file",
]

_MASK64 = (1 << 64) - 1
_GOLD_T = np.uint64(0x9E3779B97F4A7C15)
_GOLD_I = np.uint64(0xC2B2AE3D27D4EB4F)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)


def _avalanche(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, vectorized over uint64 (wrapping arithmetic)."""
    z = (z ^ (z >> np.uint64(30))) * _MIX_A
    z = (z ^ (z >> np.uint64(27))) * _MIX_B
    return z ^ (z >> np.uint64(31))


def _mix_int(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _coins(seed: int, first_index: int, count: int, length: int) -> np.ndarray:
    """Uniform [0,1) coin for every (trace index, bit position) pair.

    Row r of the result belongs to trace first_index + r.  Each coin is a
    hash of (seed, trace index, position), so it does not depend on how the
    work is chunked.
    """
    seed_word = np.uint64(_mix_int(seed + 0x9E3779B97F4A7C15))
    t = np.uint64(first_index & _MASK64) + np.arange(count, dtype=np.uint64)
    trace_words = _avalanche(seed_word ^ _avalanche(t + _GOLD_T))
    position_words = _avalanche(np.arange(length, dtype=np.uint64) + _GOLD_I)
    words = _avalanche(trace_words[:, None] ^ position_words[None, :])
    return (words >> np.uint64(11)).astype(np.float64) * 2.0**-53


def sample_trace(x: Bits, c: CircleParams, seed: int, index: int) -> BitString:
    """One trace of x: every bit kept independently with probability q.

    Fully determined by (seed, index); bit i is kept iff its coin >= p, so
    p = 0 returns x itself for any seed.
    """
    xs = bits_of(x)
    coins = _coins(seed, index, 1, len(xs))[0]
    threshold = float(c.p)
    return BitString("".join(ch for ch, u in zip(xs, coins) if u >= threshold))


@dataclass(frozen=True)
class TraceBatch:
    """A batch of traces drawn from one source string of length source_length.

    position_counts, when present, caches the number of ones seen at each
    trace position (zero-padded to the source length); it is exactly what
    empirical_mean_profile would recount from the traces.
    """

    source_length: int
    traces: tuple[BitString, ...]
    seed: int
    params: CircleParams
    position_counts: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if any(len(t) > self.source_length for t in self.traces):
            raise ValueError("traces cannot be longer than the source string")

    def __len__(self) -> int:
        return len(self.traces)


def sample_batch(
    x: Bits,
    c: CircleParams,
    seed: int,
    count: int,
    first_index: int = 0,
    chunk: int = 1 << 17,
) -> TraceBatch:
    """count traces of x with indices first_index .. first_index + count - 1.

    Equivalent to calling sample_trace once per index; the vectorized path
    additionally fills position_counts.
    """
    xs = bits_of(x)
    n = len(xs)
    threshold = float(c.p)
    traces: list[BitString] = []
    counts = np.zeros(max(n, 1), dtype=np.int64)
    if n == 0:
        traces = [BitString("")] * count
        return TraceBatch(0, tuple(traces), seed, c, ())

    source = np.frombuffer(xs.encode("ascii"), dtype=np.uint8)
    one_positions = source == ord("1")
    for start in range(0, count, chunk):
        rows = min(chunk, count - start)
        keep = _coins(seed, first_index + start, rows, n) >= threshold
        # ones landing at each trace position
        landed = np.cumsum(keep, axis=1, dtype=np.int64) - keep
        counts += np.bincount(landed[keep & one_positions], minlength=n)[:n]
        # kept characters, shifted to the front of each row
        order = np.argsort(~keep, axis=1, kind="stable")
        gathered = source[order]
        lengths = keep.sum(axis=1)
        flat = gathered.tobytes()
        traces.extend(
            BitString(flat[r * n : r * n + int(lengths[r])].decode("ascii"))
            for r in range(rows)
        )
    return TraceBatch(n, tuple(traces), seed, c, tuple(int(v) for v in counts[:n]))


@dataclass(frozen=True)
class MeanProfile:
    """Per-position expected bit values E_0 .. E_{n-1} of traces of a string.

    Entries are Fractions on the exact channel path and floats otherwise;
    either way 0 <= E_j <= 1, and E_j = 0 beyond the last one of the source.
    """

    values: tuple
    source_length: int
    params: CircleParams

    def __len__(self) -> int:
        return len(self.values)

    def l1_distance(self, other: "MeanProfile"):
        self._check_comparable(other)
        return sum(abs(a - b) for a, b in zip(self.values, other.values))

    def linf_distance(self, other: "MeanProfile"):
        self._check_comparable(other)
        if not self.values:
            return 0
        return max(abs(a - b) for a, b in zip(self.values, other.values))

    def _check_comparable(self, other: "MeanProfile") -> None:
        if self.source_length != other.source_length:
            raise ValueError("profiles have different source lengths")

    def to_json(self) -> list[float]:
        return [float(v) for v in self.values]


def exact_mean_profile(x: Bits, c: CircleParams) -> MeanProfile:
    """E_j = sum_k C(k, j) p^(k-j) q^(j+1) x_k for j = 0 .. n-1.

    Exact rational arithmetic when the channel is exact; otherwise binary64
    with compensated summation.
    """
    xs = bits_of(x)
    n = len(xs)
    values: list = []
    if c.exact:
        p, q = Fraction(c.p), Fraction(c.q)
        ones = [k for k, ch in enumerate(xs) if ch == "1"]
        for j in range(n):
            acc = Fraction(0)
            for k in ones:
                if k >= j:
                    acc += math.comb(k, j) * p ** (k - j)
            values.append(q ** (j + 1) * acc)
    else:
        p = float(c.p)
        q = float(c.q)
        for j in range(n):
            terms = []
            weight = 1.0  # C(k, j) * p^(k-j), updated by recurrence in k
            for k in range(j, n):
                if xs[k] == "1":
                    terms.append(weight)
                weight *= p * (k + 1) / (k + 1 - j)
            values.append(q ** (j + 1) * math.fsum(terms))
    return MeanProfile(tuple(values), n, c)


def empirical_mean_profile(batch: TraceBatch) -> MeanProfile:
    """Position-wise average of the batch, zero-padded to the source length."""
    total = len(batch.traces)
    if total == 0:
        raise ValueError("cannot average an empty batch")
    n = batch.source_length
    counts = batch.position_counts
    if counts is None:
        acc = [0] * n
        for trace in batch.traces:
            for j, ch in enumerate(trace.bits):
                if ch == "1":
                    acc[j] += 1
        counts = tuple(acc)
    values = tuple(cnt / total for cnt in counts)
    return MeanProfile(values, n, batch.params)


def exact_potential_expectation(x: Bits, c: CircleParams, k: int):
    """Expected value of the order-k potential sum C(i, k) * trace_bit_i.

    Equals q^(k+1) * sum_j C(j, k) x_j; exact when the channel is exact.
    """
    xs = bits_of(x)
    n = len(xs)
    if not 0 <= k <= n - 1:
        raise ValueError(f"potential order must satisfy 0 <= k <= n-1, got {k}")
    total = sum(math.comb(j, k) for j, ch in enumerate(xs) if ch == "1")
    if c.exact:
        return Fraction(c.q) ** (k + 1) * total
    return float(c.q) ** (k + 1) * total


_HEADER = re.compile(r"#\s*n=(\d+)\s+p=(\S+)\s+seed=(-?\d+)\s*$")


def write_trace_file(path: Union[str, Path], batch: TraceBatch) -> None:
    lines = [f"# n={batch.source_length} p={batch.params.p_text()} seed={batch.seed}"]
    lines.extend(t.bits for t in batch.traces)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_trace_file(path: Union[str, Path]) -> TraceBatch:
    text = Path(path).read_text(encoding="ascii").splitlines()
    if not text:
        raise ValueError(f"{path}: empty trace file")
    match = _HEADER.match(text[0])
    if not match:
        raise ValueError(f"{path}: missing '# n=.. p=.. seed=..' header")
    n = int(match.group(1))
    params = CircleParams.parse(match.group(2))
    seed = int(match.group(3))
    traces = tuple(BitString(line.strip()) for line in text[1:] if line.strip())
    return TraceBatch(n, traces, seed, params)
