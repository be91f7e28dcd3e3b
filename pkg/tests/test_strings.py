import random

import pytest
from hypothesis import given, settings, strategies as st

from tracedist.strings import (
    BitString,
    WeightMismatchError,
    block_decompose,
    edit_distance,
    edit_distance_within,
    hamming_distance,
)

from oracles import block_oracle, hamming_oracle, indel_oracle

bitstrings = st.text(alphabet="01", max_size=20)


class TestBitString:
    def test_validation(self):
        with pytest.raises(ValueError):
            BitString("012")
        with pytest.raises(ValueError):
            BitString("0 1")
        assert BitString("").bits == ""

    def test_sequence_protocol(self):
        x = BitString("0110")
        assert len(x) == 4
        assert list(x) == [0, 1, 1, 0]
        assert x[1] == 1
        assert x[1:3].bits == "11"
        assert (x + "01").bits == "011001"
        assert x.weight == 2
        assert x.ones() == (1, 2)

    def test_random_is_seeded(self):
        assert BitString.random(32, 7) == BitString.random(32, 7)
        assert BitString.random(32, 7) != BitString.random(32, 8)


class TestHamming:
    def test_identical(self):
        assert hamming_distance("1010", "1010") == 0

    def test_all_differ(self):
        assert hamming_distance("10", "01") == 2

    def test_hard_pair_strings(self):
        assert hamming_distance("1001110", "0111001") == 6
        assert hamming_oracle("1001110", "0111001") == 6

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="unequal lengths"):
            hamming_distance("10", "100")

    def test_matches_oracle(self):
        rng = random.Random(1)
        for _ in range(200):
            n = rng.randrange(0, 16)
            x = "".join(rng.choice("01") for _ in range(n))
            y = "".join(rng.choice("01") for _ in range(n))
            assert hamming_distance(x, y) == hamming_oracle(x, y)


class TestEditDistance:
    def test_identity(self):
        assert edit_distance("0110", "0110") == 0

    def test_swap(self):
        assert edit_distance("01", "10") == 2
        assert indel_oracle("01", "10") == 2

    def test_hard_pair(self):
        assert edit_distance("1001110", "0111001") == 4
        assert indel_oracle("1001110", "0111001") == 4

    def test_unequal_lengths_allowed(self):
        assert edit_distance("0110", "010") == 1

    def test_matches_oracle(self):
        rng = random.Random(2)
        for _ in range(200):
            x = "".join(rng.choice("01") for _ in range(rng.randrange(0, 12)))
            y = "".join(rng.choice("01") for _ in range(rng.randrange(0, 12)))
            assert edit_distance(x, y) == indel_oracle(x, y)

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(bitstrings, bitstrings, bitstrings)
    def test_is_a_metric(self, x, y, z):
        assert edit_distance(x, y) == edit_distance(y, x)
        assert (edit_distance(x, y) == 0) == (x == y)
        assert edit_distance(x, z) <= edit_distance(x, y) + edit_distance(y, z)

    def test_bounded_variant(self):
        rng = random.Random(3)
        for _ in range(300):
            x = "".join(rng.choice("01") for _ in range(rng.randrange(0, 12)))
            y = "".join(rng.choice("01") for _ in range(rng.randrange(0, 12)))
            limit = rng.randrange(0, 6)
            exact = edit_distance(x, y)
            bounded = edit_distance_within(x, y, limit)
            assert bounded == (exact if exact <= limit else None)


class TestBlockDecompose:
    def test_identical_is_one_case1_block(self):
        d = block_decompose("0110", "0110", 1)
        assert d is not None
        assert d.labels == (1,)
        assert d.blocks[0].length == 4
        d.validate("0110", "0110")

    def test_single_case2_block(self):
        d = block_decompose("011", "110", 3)
        assert d.labels == (2,)
        blk = d.blocks[0]
        assert (blk.x_bit, blk.shared, blk.y_bit) == (0, "11", 0)
        d.validate("011", "110")

    def test_minimum_blocks_wins(self):
        # "0010"/"0100" also splits as [1, 2, 1] but a single case-2 block
        # (a='0', s="010", b='0') covers the whole pair.
        d = block_decompose("0010", "0100", 3)
        assert d.labels == (2,)
        assert block_oracle("0010", "0100", 3) == (1, (2,), (-4,))
        d.validate("0010", "0100")

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="unequal lengths"):
            block_decompose("01", "011", 3)

    def test_weight_mismatch_short_circuits(self):
        with pytest.raises(WeightMismatchError):
            block_decompose("11", "10", 3)

    def test_empty_pair(self):
        d = block_decompose("", "", 2)
        assert d is not None and d.num_blocks == 0

    def test_none_when_budget_too_small(self):
        # x = a1 a2 s / y = s b1 b2 patterns need more than one block each.
        assert block_decompose("1100", "0011", 1) is None

    def test_edit_bound(self):
        rng = random.Random(4)
        found = 0
        for _ in range(400):
            n = rng.randrange(1, 11)
            x = "".join(rng.choice("01") for _ in range(n))
            y = "".join(rng.choice("01") for _ in range(n))
            if x.count("1") != y.count("1"):
                continue
            d = block_decompose(x, y, 4)
            if d is None:
                continue
            found += 1
            d.validate(x, y)
            assert edit_distance(x, y) <= 2 * d.num_blocks
        assert found > 50

    def test_matches_exhaustive_oracle(self):
        rng = random.Random(5)
        # exhaustive over short lengths, random sampling up to n = 12
        pairs = []
        for n in range(0, 5):
            for xi in range(1 << n):
                for yi in range(1 << n):
                    x = format(xi, f"0{n}b") if n else ""
                    y = format(yi, f"0{n}b") if n else ""
                    pairs.append((x, y))
        for _ in range(250):
            n = rng.randrange(5, 13)
            x = "".join(rng.choice("01") for _ in range(n))
            y = "".join(rng.choice("01") for _ in range(n))
            pairs.append((x, y))
        checked = 0
        for x, y in pairs:
            if x.count("1") != y.count("1"):
                continue
            for d_max in (1, 2, 3, 4):
                expected = block_oracle(x, y, d_max)
                got = block_decompose(x, y, d_max)
                if expected is None:
                    assert got is None
                else:
                    assert got is not None
                    got.validate(x, y)
                    lengths = tuple(-b.length for b in got.blocks)
                    assert (got.num_blocks, got.labels, lengths) == expected
                checked += 1
        assert checked > 400

    def test_every_equal_weight_edit2_pair_decomposes(self):
        # one moved bit, n <= 8 here (n <= 10 is covered by the acceptance
        # suite); three blocks always suffice
        for n in range(2, 9):
            for xi in range(1 << n):
                x = format(xi, f"0{n}b")
                for i in range(n):
                    removed = x[:i] + x[i + 1 :]
                    for j in range(n):
                        y = removed[:j] + x[i] + removed[j:]
                        if y == x:
                            continue
                        assert block_decompose(x, y, 3) is not None
