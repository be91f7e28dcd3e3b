"""Mean-based distinguishers for deletion-channel traces.

Both algorithms consume a batch only through its empirical mean profile, so
they are mean-based by construction: two batches with identical profiles
yield identical decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .channel import (
    TraceBatch,
    empirical_mean_profile,
    exact_mean_profile,
    exact_potential_expectation,
)
from .errors import InvariantViolation
from .polynomial import CircleParams
from .strings import Bits, bits_of, hamming_distance

__all__ = [
    "Decision",
    "select_k",
    "required_samples",
    "potential_distinguish",
    "mean_based_distinguish",
]


@dataclass(frozen=True)
class Decision:
    """Outcome of a two-hypothesis test between source strings X and Y.

    choice names the hypothesis with the strictly smaller distance to the
    observed statistic; exact ties resolve to X with the tie flag set.
    margin is the absolute gap between the two distances.
    """

    choice: str  # "X" or "Y"
    statistic: float
    margin: float
    method: str  # "potential" or "mean"
    k: int | None
    num_traces: int
    tie: bool = False

    def to_json(self) -> dict:
        out = {
            "choice": self.choice,
            "statistic": self.statistic,
            "margin": self.margin,
            "method": self.method,
            "T": self.num_traces,
            "tie": self.tie,
        }
        if self.k is not None:
            out["k"] = self.k
        return out


def _check_pair(x: str, y: str) -> None:
    if x == y:
        raise ValueError("the two hypothesis strings must differ")
    if len(x) != len(y):
        raise ValueError(f"unequal lengths: {len(x)} vs {len(y)}")


def select_k(x: Bits, y: Bits, c: CircleParams, d: int) -> int:
    """Smallest k <= d-1 whose potential expectations separate x and y.

    The order-k expectation gap is q^(k+1) times the integer
    sum_j C(j, k) (x_j - y_j), so the test "gap >= q^(k+1)" is an exact
    integer comparison regardless of how p is represented.  A separating k
    is guaranteed to exist whenever the Hamming distance is at most d;
    failure to find one is therefore an internal error, not bad input.
    """
    xs, ys = bits_of(x), bits_of(y)
    _check_pair(xs, ys)
    if hamming_distance(xs, ys) > d:
        raise ValueError("Hamming distance exceeds the stated bound d")
    for k in range(d):
        gap = sum(
            math.comb(j, k) * (1 if a == "1" else -1)
            for j, (a, b) in enumerate(zip(xs, ys))
            if a != b
        )
        if gap != 0:
            return k
    raise InvariantViolation(
        f"no separating potential order below d={d} for strings at Hamming "
        f"distance {hamming_distance(xs, ys)}; this contradicts the gap guarantee"
    )


def required_samples(n: int, d: int, c: CircleParams) -> int:
    """ceil(10 * (n/q)^(2*(d+2))) as an exact integer.

    Informational worst-case trace count; it is astronomically large for all
    but tiny parameters, which is why experiments take the batch size as an
    explicit parameter instead.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    q = Fraction(c.q)  # exact binary value when q is a float
    if q == 0:
        raise ValueError("q must be positive")
    return math.ceil(10 * Fraction(n) ** (2 * (d + 2)) / q ** (2 * (d + 2)))


def _decide(distance_x: float, distance_y: float) -> tuple[str, bool]:
    if distance_x < distance_y:
        return "X", False
    if distance_y < distance_x:
        return "Y", False
    return "X", True


def potential_distinguish(
    batch: TraceBatch, x: Bits, y: Bits, c: CircleParams
) -> Decision:
    """Decide between x and y by the separating potential statistic.

    Forms the empirical potential sum C(j, k) * E_j-estimate from the batch's
    mean profile and returns the hypothesis whose exact expectation is closer.
    """
    xs, ys = bits_of(x), bits_of(y)
    _check_pair(xs, ys)
    if len(xs) != batch.source_length:
        raise ValueError("batch source length does not match the hypotheses")
    profile = empirical_mean_profile(batch)
    k = select_k(xs, ys, c, hamming_distance(xs, ys))
    statistic = math.fsum(
        math.comb(j, k) * float(v) for j, v in enumerate(profile.values)
    )
    dist_x = abs(statistic - float(exact_potential_expectation(xs, c, k)))
    dist_y = abs(statistic - float(exact_potential_expectation(ys, c, k)))
    choice, tie = _decide(dist_x, dist_y)
    return Decision(
        choice=choice,
        statistic=statistic,
        margin=abs(dist_x - dist_y),
        method="potential",
        k=k,
        num_traces=len(batch),
        tie=tie,
    )


def mean_based_distinguish(
    batch: TraceBatch,
    x: Bits,
    y: Bits,
    c: CircleParams,
    norm: str = "l1",
) -> Decision:
    """Decide between x and y by profile distance (l1 default, linf optional).

    Returns the hypothesis whose exact mean profile is closer to the batch's
    empirical profile; the statistic is the winning distance.
    """
    xs, ys = bits_of(x), bits_of(y)
    _check_pair(xs, ys)
    if len(xs) != batch.source_length:
        raise ValueError("batch source length does not match the hypotheses")
    if norm not in ("l1", "linf"):
        raise ValueError(f"unknown profile norm {norm!r}")
    observed = empirical_mean_profile(batch)
    profile_x = exact_mean_profile(xs, c)
    profile_y = exact_mean_profile(ys, c)
    if norm == "l1":
        dist_x = float(observed.l1_distance(profile_x))
        dist_y = float(observed.l1_distance(profile_y))
    else:
        dist_x = float(observed.linf_distance(profile_x))
        dist_y = float(observed.linf_distance(profile_y))
    choice, tie = _decide(dist_x, dist_y)
    return Decision(
        choice=choice,
        statistic=min(dist_x, dist_y),
        margin=abs(dist_x - dist_y),
        method="mean",
        k=None,
        num_traces=len(batch),
        tie=tie,
    )
