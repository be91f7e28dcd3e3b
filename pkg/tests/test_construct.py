import random
from fractions import Fraction

import pytest

from tracedist.construct import (
    alternating_pair,
    analyze_pair,
    cyclotomic_product,
    hard_pair,
    pte_degree,
    pte_degree_from_sets,
    pte_sets,
    read_pair_file,
    verify_pte,
    write_pair_file,
)
from tracedist.errors import InvariantViolation
from tracedist.polynomial import (
    CircleParams,
    IntPolynomial,
    circle_supremum,
    multiplicity_at_one,
    sign_changes,
    string_difference,
)
from tracedist.strings import (
    BitString,
    block_decompose,
    edit_distance,
    hamming_distance,
)

from oracles import cyclotomic_subset_oracle, pte_power_oracle

HALF = CircleParams(Fraction(1, 2))


class TestCyclotomicProduct:
    def test_order_one(self):
        assert cyclotomic_product(1) == IntPolynomial((1, -1, 0, -1, 1))

    def test_order_one_multiplicity(self):
        k, _ = multiplicity_at_one(cyclotomic_product(1))
        assert k == 2

    def test_order_three_endpoints(self):
        poly = cyclotomic_product(3)
        assert poly.degree == 40
        assert poly.coefficient(0) == 1
        assert poly.coefficient(40) == 1

    def test_even_and_negative_orders_rejected(self):
        for bad in (0, 2, -1, 4):
            with pytest.raises(ValueError):
                cyclotomic_product(bad)
        with pytest.raises(ValueError):
            cyclotomic_product(17)

    @pytest.mark.parametrize("k", [1, 3, 5, 7])
    def test_matches_subset_oracle(self, k):
        poly = cyclotomic_product(k)
        expected = cyclotomic_subset_oracle(k)
        assert {d: c for d, c in enumerate(poly.coeffs) if c} == expected

    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_sign_pattern(self, k):
        poly = cyclotomic_product(k)
        for degree, coeff in enumerate(poly.coeffs):
            assert coeff in (-1, 0, 1)
            if degree % 2 == 0:
                assert coeff >= 0
            else:
                assert coeff <= 0

    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_root_multiplicity_is_k_plus_one(self, k):
        mult, _ = multiplicity_at_one(cyclotomic_product(k))
        assert mult == k + 1


class TestHardPair:
    def test_order_one_strings(self):
        spec = hard_pair(1)
        assert spec.x.bits == "1001110"
        assert spec.y.bits == "0111001"
        assert spec.core.bits == "01110"
        assert spec.n == 4

    def test_multiplicity_is_k_plus_two(self):
        for k in (1, 3):
            spec = hard_pair(k)
            mult, _ = multiplicity_at_one(string_difference(spec.x, spec.y))
            assert mult == k + 2

    def test_length_83_with_prefix_40(self):
        spec = hard_pair(3, BitString.random(40, 7))
        assert len(spec.x) == len(spec.y) == 83
        mult, _ = multiplicity_at_one(string_difference(spec.x, spec.y))
        assert mult == 5

    def test_polynomial_identity_with_random_prefixes(self):
        rng = random.Random(41)
        for k in (1, 3, 5):
            product = cyclotomic_product(k)
            for trial in range(3):
                prefix = "".join(
                    rng.choice("01") for _ in range(rng.randrange(0, 2 * product.coeffs.__len__()))
                )
                spec = hard_pair(k, prefix)
                gap = string_difference(spec.x, spec.y)
                expected = -(IntPolynomial((-1, 0, 1)) * product).shift(len(prefix))
                assert gap == expected

    def test_core_polynomial_is_binary(self):
        for k in (1, 3, 5):
            spec = hard_pair(k)
            assert set(spec.core.bits) <= {"0", "1"}
            assert spec.core.bits[-1] == "0"
            assert len(spec.core) == spec.n + 1

    def test_edit_distance_exactly_four(self):
        for k in (1, 3):
            spec = hard_pair(k)
            assert edit_distance(spec.x, spec.y) == 4

    def test_even_k_rejected(self):
        with pytest.raises(ValueError):
            hard_pair(2)

    def test_form_and_no_small_decomposition(self):
        # generated pairs have the insert-two/append-two shape, and admit no
        # block decomposition with at most two blocks
        spec = hard_pair(1)
        m = len(spec.prefix)
        assert spec.x.bits == spec.prefix.bits + "10" + spec.core.bits
        assert spec.y.bits == spec.prefix.bits + spec.core.bits + "01"
        assert block_decompose(spec.x, spec.y, 2) is None

    def test_hardness_ordering_at_matched_length(self):
        # with the canonical prefix length m = n, the generated pair's
        # certified sup sits below the alternating pair's at equal length 83;
        # the hard side needs a fine grid because its Lipschitz constant is
        # large while its supremum is small
        spec = hard_pair(3, "0" * 40)
        probe_x, probe_y = alternating_pair(20)
        assert len(spec.x) == len(probe_x) == 83
        hard_cert = circle_supremum(
            string_difference(spec.x, spec.y), HALF, grid=1 << 20, refine_rounds=4
        )
        probe_cert = circle_supremum(
            string_difference(probe_x, probe_y), HALF, grid=1 << 16, refine_rounds=4
        )
        assert hard_cert.upper < probe_cert.lower


class TestAlternatingPair:
    def test_smallest(self):
        x, y = alternating_pair(0)
        assert (x.bits, y.bits) == ("101", "011")

    def test_structure(self):
        x, y = alternating_pair(2)
        assert x.bits == "01" * 2 + "101" + "01" * 2
        assert len(x) == 11
        assert hamming_distance(x, y) == 2
        assert edit_distance(x, y) == 2
        mult, _ = multiplicity_at_one(string_difference(x, y))
        assert mult == 1


class TestPteSets:
    def test_empty(self):
        assert pte_sets("0000", "0000") == (frozenset(), frozenset())

    def test_basic(self):
        assert pte_sets("101", "011") == (frozenset({0, 2}), frozenset({1, 2}))

    def test_hard_pair_sets(self):
        spec = hard_pair(1)
        a, b = pte_sets(spec.x, spec.y)
        assert a == frozenset({0, 3, 4, 5})
        assert b == frozenset({1, 2, 3, 6})


class TestVerifyPte:
    def test_hard_pair_degree_two_holds(self):
        assert verify_pte({0, 3, 4, 5}, {1, 2, 3, 6}, 2)

    def test_hard_pair_degree_three_fails(self):
        assert not verify_pte({0, 3, 4, 5}, {1, 2, 3, 6}, 3)

    def test_identical_sets(self):
        assert verify_pte({1, 5, 9}, {1, 5, 9}, 7)

    def test_size_mismatch(self):
        assert not verify_pte({1, 2}, {1, 2, 3}, 0)

    def test_degree_zero_checks_sizes_only(self):
        assert verify_pte({1}, {9}, 0)


class TestPteDegree:
    def test_weight_mismatch_gives_minus_one(self):
        assert pte_degree("1", "0") == -1

    def test_swap_gives_zero(self):
        assert pte_degree("10", "01") == 0

    def test_hard_pair_degree(self):
        spec = hard_pair(1)
        assert pte_degree(spec.x, spec.y) == 2

    def test_identical_rejected(self):
        with pytest.raises(ValueError):
            pte_degree("11", "11")

    def test_equivalence_of_both_routes(self):
        rng = random.Random(42)
        for _ in range(1000):
            n = rng.randrange(2, 25)
            x = "".join(rng.choice("01") for _ in range(n))
            y = x
            while y == x:
                y = "".join(rng.choice("01") for _ in range(n))
            by_multiplicity = pte_degree(x, y)
            a, b = pte_sets(x, y)
            assert by_multiplicity == pte_degree_from_sets(a, b)
            assert by_multiplicity == pte_power_oracle(a, b)
            # the degree is the largest k passing verify_pte
            if by_multiplicity >= 0:
                assert verify_pte(a, b, by_multiplicity)
            assert not verify_pte(a, b, by_multiplicity + 1)


class TestBlockMultiplicityBound:
    def test_three_d_bound_on_random_decomposable_pairs(self):
        rng = random.Random(43)
        seen = 0
        for _ in range(1200):
            n = rng.randrange(2, 12)
            x = "".join(rng.choice("01") for _ in range(n))
            y = "".join(rng.choice("01") for _ in range(n))
            if x == y or x.count("1") != y.count("1"):
                continue
            decomposition = block_decompose(x, y, 4)
            if decomposition is None:
                continue
            seen += 1
            mult, _ = multiplicity_at_one(string_difference(x, y))
            assert mult <= 3 * decomposition.num_blocks
        assert seen > 100


class TestAnalyzePair:
    def test_hard_pair_report(self):
        spec = hard_pair(1)
        report = analyze_pair(spec.x, spec.y, HALF, grid=1 << 12, refine_rounds=3)
        assert report.n == 7
        assert report.hamming == 6
        assert report.edit == 4
        assert report.weight_difference == 0
        assert report.multiplicity == 3
        assert report.pte_degree == 2
        # this short pair happens to decompose into three blocks (never two);
        # the multiplicity bound 3*d holds either way
        assert report.blocks is not None and report.blocks.num_blocks == 3
        assert report.multiplicity <= 3 * report.blocks.num_blocks
        assert report.certificate.lower <= report.certificate.upper
        assert report.l1_profile_separation > 0
        assert float(report.multiplicity_lower_bound) <= report.certificate.lower

    def test_swap_pair_report(self):
        report = analyze_pair("10", "01", HALF, grid=256, refine_rounds=2)
        assert report.multiplicity == 1
        assert report.sign_change_count == 1
        assert report.pte_degree == 0
        assert report.blocks is not None
        assert report.blocks.labels == (2,)

    def test_weight_shortcut(self):
        report = analyze_pair("110", "111", HALF, grid=256, refine_rounds=2)
        assert report.weight_difference == -1
        assert report.pte_degree == -1
        assert report.blocks is None

    def test_validation(self):
        with pytest.raises(ValueError):
            analyze_pair("11", "11", HALF)
        with pytest.raises(ValueError):
            analyze_pair("11", "110", HALF)

    def test_json_is_serializable(self):
        import json

        spec = hard_pair(1)
        report = analyze_pair(spec.x, spec.y, HALF, grid=256, refine_rounds=1)
        payload = json.loads(json.dumps(report.to_json()))
        assert payload["multiplicity_at_one"] == 3
        assert payload["pte_degree"] == 2
        assert payload["p"] == "1/2"


class TestPairFiles:
    def test_round_trip(self, tmp_path):
        spec = hard_pair(1)
        path = tmp_path / "pair.json"
        meta = {"family": "hard", "k": 1, "prefix_len": 0, "p": None}
        write_pair_file(path, spec.x, spec.y, meta)
        x, y, loaded = read_pair_file(path)
        assert (x, y) == (spec.x, spec.y)
        assert loaded == meta
