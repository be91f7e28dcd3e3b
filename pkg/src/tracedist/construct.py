"""Explicit hard pairs at edit distance 4, equal-power-sum extraction, and
the aggregate pair analyzer.

The hard pair of order k (odd) is built from the exact expansion of
prod_{j=0..k} (1 - w**(3**j)).  Writing n for its degree and m for the
prefix length, the two strings

    x = prefix + "10" + core,      y = prefix + core + "01"

have equal length m + n + 3, edit distance at most 4, and their polynomial
difference factors exactly as -(w**m) * (w**2 - 1) * product, which pins the
root multiplicity at w = 1 to k + 2 and keeps the maximum modulus on the
p = 1/2 circle small.

Pair files are JSON: {"x": ..., "y": ..., "meta": {family, k, prefix_len, p}}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Union

from .channel import exact_mean_profile
from .errors import InvariantViolation
from .polynomial import (
    CircleParams,
    IntPolynomial,
    SupremumCertificate,
    circle_supremum,
    from_string,
    multiplicity_at_one,
    mult_to_sup_lower_bound,
    sign_changes,
    string_difference,
)
from .strings import (
    BitString,
    Bits,
    BlockDecomposition,
    bits_of,
    block_decompose,
    edit_distance,
    edit_distance_within,
    hamming_distance,
)

__all__ = [
    "HardPairSpec",
    "PairAnalysis",
    "cyclotomic_product",
    "hard_pair",
    "alternating_pair",
    "pte_sets",
    "verify_pte",
    "pte_degree",
    "pte_degree_from_sets",
    "analyze_pair",
    "write_pair_file",
    "read_pair_file",
]

MAX_ORDER = 15  # 3**(k+1) stays comfortably representable

IndexSet = Iterable[int]


@lru_cache(maxsize=None)
def cyclotomic_product(k: int) -> IntPolynomial:
    """Exact expansion of prod_{j=0}^{k} (1 - w**(3**j)) for odd k >= 1.

    Every coefficient lies in {-1, 0, 1}: the exponents reachable as sums of
    distinct powers of three are all different.  Even-degree coefficients are
    nonnegative and odd-degree ones nonpositive, because each power of three
    is odd, so a product of r factors lands on a degree of parity r with
    sign (-1)**r.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError(f"the order k must be an odd positive integer, got {k}")
    if k > MAX_ORDER:
        raise ValueError(f"order {k} exceeds the practical cap {MAX_ORDER}")
    coeffs = [1]
    for j in range(k + 1):
        d = 3**j
        expanded = coeffs + [0] * d
        for i, v in enumerate(coeffs):
            expanded[i + d] -= v
        coeffs = expanded
    return IntPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class HardPairSpec:
    """A generated hard pair together with its construction parameters.

    k: odd order; n = sum of 3**j for j = 0..k (even); prefix: arbitrary
    leading string shared by x and y; core: the (n+1)-bit shared middle
    segment, last bit always 0.
    """

    k: int
    n: int
    prefix: BitString
    core: BitString
    x: BitString
    y: BitString


def _require(condition: bool, invariant: str) -> None:
    if not condition:
        raise InvariantViolation(f"hard pair invariant failed: {invariant}")


def hard_pair(k: int, prefix: Bits = "") -> HardPairSpec:
    """Build the order-k hard pair with an arbitrary shared prefix.

    The core string has polynomial (1 + w**2 + ... + w**n) - product, which
    is 0/1-valued; the printed sum-plus-product variant is not (already at
    k = 1 it has a coefficient 2), while this difference yields the same
    factored polynomial gap up to sign.  The core spans n + 1 positions so
    that the trailing "01" of y sits at offset m + n + 2, which the factored
    form requires; the extra bit is always 0.

    All construction invariants are re-verified on every call and a failure
    raises InvariantViolation naming the invariant.
    """
    product = cyclotomic_product(k)
    n = (3 ** (k + 1) - 1) // 2
    _require(n % 2 == 0, "n must be even")
    even_ones = IntPolynomial(tuple(1 if i % 2 == 0 else 0 for i in range(n + 1)))
    core_poly = even_ones - product
    _require(
        all(v in (0, 1) for v in core_poly.coeffs),
        "core coefficients must be 0/1",
    )
    _require(core_poly.degree <= n - 1, "core polynomial degree must be below n")
    core = BitString(
        "".join("1" if core_poly.coefficient(i) else "0" for i in range(n + 1))
    )
    pre = BitString(bits_of(prefix))
    m = len(pre)
    x = pre + BitString("10") + core
    y = pre + core + BitString("01")
    _require(len(x) == len(y) == m + n + 3, "strings must have length m + n + 3")
    _require(edit_distance_within(x, y, 4) is not None, "edit distance must be <= 4")
    gap = string_difference(x, y)
    factored = -(IntPolynomial((-1, 0, 1)) * product).shift(m)
    _require(gap == factored, "polynomial gap must factor as -(w^m)(w^2-1)*product")
    return HardPairSpec(k=k, n=n, prefix=pre, core=core, x=x, y=y)


def alternating_pair(j: int) -> tuple[BitString, BitString]:
    """The classic probe pair: "01"*j + "101"/"011" + "01"*j.

    Both strings have length 4j + 3 and differ by one transposition; their
    polynomial gap is w**(2j) * (1 - w), with a single root at 1.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    wings = "01" * j
    return BitString(wings + "101" + wings), BitString(wings + "011" + wings)


def pte_sets(x: Bits, y: Bits) -> tuple[frozenset[int], frozenset[int]]:
    """The 1-position sets of the two strings."""
    xs, ys = bits_of(x), bits_of(y)
    return (
        frozenset(i for i, c in enumerate(xs) if c == "1"),
        frozenset(i for i, c in enumerate(ys) if c == "1"),
    )


def verify_pte(a: IndexSet, b: IndexSet, k: int) -> bool:
    """True iff |a| = |b| and the power sums agree for exponents 1..k.

    Exact integer arithmetic; k = 0 checks only the sizes.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    ta, tb = tuple(a), tuple(b)
    if len(ta) != len(tb):
        return False
    return all(
        sum(v**j for v in ta) == sum(v**j for v in tb) for j in range(1, k + 1)
    )


def pte_degree(x: Bits, y: Bits) -> int:
    """Largest k such that the 1-position sets have equal power sums 1..k.

    Computed as (multiplicity of the root 1 in the polynomial gap) - 1,
    which the classical equivalence identifies with the power-sum degree;
    -1 when the weights differ.
    """
    xs, ys = bits_of(x), bits_of(y)
    if xs == ys:
        raise ValueError("the strings must differ")
    multiplicity, _ = multiplicity_at_one(string_difference(xs, ys))
    return multiplicity - 1


def pte_degree_from_sets(a: IndexSet, b: IndexSet) -> int:
    """Largest k with equal power sums 1..k, by direct summation.

    Independent of the polynomial route; used to cross-validate pte_degree.
    Power sums through exponent |a| determine a set of |a| integers, so the
    scan is bounded.
    """
    ta, tb = tuple(sorted(a)), tuple(sorted(b))
    if ta == tb:
        raise ValueError("the index sets must differ")
    if len(ta) != len(tb):
        return -1
    k = 0
    while verify_pte(ta, tb, k + 1):
        k += 1
        if k > len(ta):
            raise InvariantViolation(
                "distinct equal-size integer sets cannot share power sums "
                f"through exponent {k}"
            )
    return k


@dataclass(frozen=True)
class PairAnalysis:
    """Aggregate report for a pair of distinct equal-length strings."""

    n: int
    hamming: int
    edit: int
    weight_difference: int
    multiplicity: int
    sign_change_count: int
    pte_degree: int
    ones_x: tuple[int, ...]
    ones_y: tuple[int, ...]
    certificate: SupremumCertificate
    multiplicity_lower_bound: Fraction
    l1_profile_separation: float
    blocks: BlockDecomposition | None
    params: CircleParams

    def to_json(self) -> dict:
        blocks = None
        if self.blocks is not None:
            blocks = [
                {
                    "start": b.start,
                    "length": b.length,
                    "case": b.case,
                    "x_seg": b.x_seg,
                    "y_seg": b.y_seg,
                }
                for b in self.blocks.blocks
            ]
        return {
            "n": self.n,
            "hamming_distance": self.hamming,
            "edit_distance": self.edit,
            "weight_difference": self.weight_difference,
            "multiplicity_at_one": self.multiplicity,
            "sign_changes": self.sign_change_count,
            "pte_degree": self.pte_degree,
            "ones_x": list(self.ones_x),
            "ones_y": list(self.ones_y),
            "certified_sup": self.certificate.to_json(),
            "multiplicity_lower_bound": str(self.multiplicity_lower_bound),
            "multiplicity_lower_bound_float": float(self.multiplicity_lower_bound),
            "l1_profile_separation": self.l1_profile_separation,
            "blocks": blocks,
            "p": self.params.p_text(),
        }


def analyze_pair(
    x: Bits,
    y: Bits,
    c: CircleParams,
    grid: int = 1 << 16,
    refine_rounds: int = 6,
    max_blocks: int = 3,
) -> PairAnalysis:
    """Fill every PairAnalysis field, cross-checking the power-sum degree.

    The degree obtained from the root multiplicity must agree with the one
    obtained by direct power sums; a mismatch raises InvariantViolation.
    Block decomposition is skipped (None) when the weights differ, since the
    pair is then trivially distinguishable.
    """
    xs, ys = bits_of(x), bits_of(y)
    if len(xs) != len(ys):
        raise ValueError(f"unequal lengths: {len(xs)} vs {len(ys)}")
    if xs == ys:
        raise ValueError("the strings must differ")
    gap = string_difference(xs, ys)
    multiplicity, _ = multiplicity_at_one(gap)
    ones_x, ones_y = pte_sets(xs, ys)
    degree = multiplicity - 1
    degree_direct = pte_degree_from_sets(ones_x, ones_y)
    if degree != degree_direct:
        raise InvariantViolation(
            f"power-sum degree {degree_direct} disagrees with multiplicity "
            f"route {degree}"
        )
    weight_diff = xs.count("1") - ys.count("1")
    blocks = None
    if weight_diff == 0:
        blocks = block_decompose(xs, ys, max_blocks)
    separation = float(
        exact_mean_profile(xs, c).l1_distance(exact_mean_profile(ys, c))
    )
    return PairAnalysis(
        n=len(xs),
        hamming=hamming_distance(xs, ys),
        edit=edit_distance(xs, ys),
        weight_difference=weight_diff,
        multiplicity=multiplicity,
        sign_change_count=sign_changes(gap),
        pte_degree=degree,
        ones_x=tuple(sorted(ones_x)),
        ones_y=tuple(sorted(ones_y)),
        certificate=circle_supremum(gap, c, grid, refine_rounds),
        multiplicity_lower_bound=mult_to_sup_lower_bound(
            max(int(gap.degree), 1), multiplicity
        ),
        l1_profile_separation=separation,
        blocks=blocks,
        params=c,
    )


def write_pair_file(
    path: Union[str, Path], x: Bits, y: Bits, meta: dict | None = None
) -> None:
    payload = {"x": bits_of(x), "y": bits_of(y), "meta": meta or {}}
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="ascii"
    )


def read_pair_file(path: Union[str, Path]) -> tuple[BitString, BitString, dict]:
    payload = json.loads(Path(path).read_text(encoding="ascii"))
    return BitString(payload["x"]), BitString(payload["y"]), payload.get("meta", {})
