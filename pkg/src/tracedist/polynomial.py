"""Exact integer polynomials and certified maximum modulus on shifted circles.

Coefficients, division and sign counting use arbitrary-precision integers;
complex evaluation uses binary64 floats only.  The grid evaluation inside
:func:`circle_supremum` may be chunked, with chunk maxima merged
deterministically, so results are identical to a sequential pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from .strings import Bits, bits_of

__all__ = [
    "IntPolynomial",
    "CircleParams",
    "SupremumCertificate",
    "from_string",
    "string_difference",
    "multiplicity_at_one",
    "sign_changes",
    "norms",
    "modulus_on_circle",
    "circle_supremum",
    "mult_to_sup_lower_bound",
    "quotient_mass_bound",
]

DEFAULT_GRID = 1 << 16
DEFAULT_REFINE_ROUNDS = 6

# Each refinement round splits this many best cells into this many children.
_REFINE_CELLS = 16
_REFINE_SPLIT = 16


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; ``coeffs[i]`` multiplies ``w**i``.

    Trailing zero coefficients are normalized away, so equality is exact
    structural equality.  The zero polynomial has degree -inf.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coefficient: int = 1) -> "IntPolynomial":
        return cls((0,) * power + (coefficient,))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> int:
        return self.coeffs[power] if 0 <= power < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-v for v in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: Union[int, "IntPolynomial"]) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * v for v in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, powers: int) -> "IntPolynomial":
        """Multiply by w**powers."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * powers + self.coeffs)

    def __call__(self, z):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0 * z
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def to_json(self) -> list[str]:
        """Coefficients as decimal strings, index = degree."""
        return [str(v) for v in self.coeffs]

    @classmethod
    def from_json(cls, items: Iterable[str]) -> "IntPolynomial":
        return cls(tuple(int(s) for s in items))


def from_string(x: Bits) -> IntPolynomial:
    """Polynomial whose coefficient j equals bit j of x."""
    return IntPolynomial(tuple(1 if c == "1" else 0 for c in bits_of(x)))


def string_difference(x: Bits, y: Bits) -> IntPolynomial:
    """from_string(x) - from_string(y); coefficients lie in {-1, 0, 1}."""
    return from_string(x) - from_string(y)


def multiplicity_at_one(f: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Largest k with (w-1)**k dividing f, and the exact quotient g.

    f == (w-1)**k * g with g(1) != 0, computed by repeated synthetic
    division in integer arithmetic (the quotient of an integer polynomial by
    w-1 is again integral whenever the division is exact).
    """
    if f.is_zero():
        raise ValueError("multiplicity at 1 is undefined for the zero polynomial")
    k = 0
    cur = list(f.coeffs)
    while sum(cur) == 0:
        top = len(cur) - 1
        quotient = [0] * top
        quotient[top - 1] = cur[top]
        for i in range(top - 1, 0, -1):
            quotient[i - 1] = cur[i] + quotient[i]
        cur = quotient
        k += 1
    return k, IntPolynomial(tuple(cur))


def sign_changes(f: IntPolynomial) -> int:
    """Descartes sign-change count C(f): adjacent nonzero coefficients of
    opposite sign, zeros in between ignored."""
    if f.is_zero():
        raise ValueError("sign changes are undefined for the zero polynomial")
    nonzero = [v for v in f.coeffs if v]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def norms(f: IntPolynomial) -> tuple[int, float]:
    """(l1, l2) coefficient norms."""
    l1 = sum(abs(v) for v in f.coeffs)
    l2 = math.sqrt(float(sum(v * v for v in f.coeffs)))
    return l1, l2


Probability = Union[int, Fraction, float]


@dataclass(frozen=True)
class CircleParams:
    """Deletion probability p in [0, 1) and retention probability q = 1 - p.

    The associated curve is the circle of radius q centered at p, i.e. the
    image of the unit circle under z -> p + q*z.  When p is given as an int
    or Fraction, q is exact and downstream computations that support it run
    in exact rational arithmetic.
    """

    p: Probability
    q: Probability = field(init=False)

    def __post_init__(self) -> None:
        p = self.p
        if isinstance(p, float):
            q: Probability = 1.0 - p
        else:
            p = Fraction(p)
            q = 1 - p
            object.__setattr__(self, "p", p)
        if not 0 <= p < 1:
            raise ValueError(f"deletion probability must lie in [0, 1): {p}")
        object.__setattr__(self, "q", q)

    @property
    def exact(self) -> bool:
        return not isinstance(self.p, float)

    @classmethod
    def parse(cls, text: str) -> "CircleParams":
        """Parse "1/2" (exact rational) or "0.5" (binary64 float)."""
        t = text.strip()
        if "/" in t:
            num, den = t.split("/", 1)
            return cls(Fraction(int(num), int(den)))
        if "." in t or "e" in t.lower():
            return cls(float(t))
        return cls(Fraction(int(t)))

    def p_text(self) -> str:
        if isinstance(self.p, float):
            return repr(self.p)
        return str(self.p)


@dataclass(frozen=True)
class SupremumCertificate:
    """Certified bracket for sup |f| over the circle of radius q about p.

    lower is an evaluated modulus (attained at witness_theta), upper adds the
    Lipschitz slack of the coarsest unrefined cell, so
    lower <= true sup <= upper always holds.
    """

    lower: float
    upper: float
    witness_theta: float
    grid_points: int
    lipschitz_bound: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "witness_theta": self.witness_theta,
            "grid_points": self.grid_points,
            "lipschitz_bound": self.lipschitz_bound,
        }


def modulus_on_circle(f: IntPolynomial, c: CircleParams, thetas) -> np.ndarray:
    """|f(p + q*exp(i*theta))| for an array of angles, Horner in complex128."""
    th = np.asarray(thetas, dtype=np.float64)
    w = float(c.p) + float(c.q) * np.exp(1j * th)
    acc = np.zeros_like(w)
    for a in reversed(f.coeffs):
        acc = acc * w + float(a)
    return np.abs(acc)


def circle_supremum(
    f: IntPolynomial,
    c: CircleParams,
    grid: int = DEFAULT_GRID,
    refine_rounds: int = DEFAULT_REFINE_ROUNDS,
) -> SupremumCertificate:
    """Certified bracket for sup { |f(w)| : |w - p| = q }.

    The modulus is sampled on the uniform grid theta_i = -pi + 2*pi*i/grid.
    |f(z(theta))| is Lipschitz in theta with constant L = q * sum(k*|a_k|):
    |f'(z)| <= sum(k*|a_k|) on the closed disk (where |z| <= p + q = 1) and
    the chord between circle points is at most q times the angle difference.
    Each grid point therefore certifies its cell of half-width pi/grid, and

        upper = max sampled modulus + (pi/grid) * L.

    Every refinement round re-brackets the _REFINE_CELLS cells with the
    largest upper bounds by splitting each into _REFINE_SPLIT children, which
    can only tighten the bracket.  lower is the best modulus evaluated
    anywhere, attained at witness_theta.
    """
    if grid < 8:
        raise ValueError("grid must have at least 8 points")
    if refine_rounds < 0:
        raise ValueError("refine_rounds must be nonnegative")

    lipschitz = float(c.q) * float(sum(k * abs(a) for k, a in enumerate(f.coeffs)))
    step = 2.0 * math.pi / grid

    centers_parts = []
    values_parts = []
    best_value = -math.inf
    best_theta = 0.0
    evaluations = 0
    chunk = 1 << 18
    for start in range(0, grid, chunk):
        idx = np.arange(start, min(start + chunk, grid), dtype=np.float64)
        thetas = -math.pi + step * idx
        vals = modulus_on_circle(f, c, thetas)
        evaluations += len(idx)
        top = int(np.argmax(vals)) if len(vals) else 0
        if len(vals) and vals[top] > best_value:
            best_value = float(vals[top])
            best_theta = float(thetas[top])
        centers_parts.append(thetas)
        values_parts.append(vals)
    centers = np.concatenate(centers_parts)
    values = np.concatenate(values_parts)
    halfwidths = np.full(grid, math.pi / grid)

    for _ in range(refine_rounds):
        bounds = values + halfwidths * lipschitz
        order = np.argsort(-bounds, kind="stable")[:_REFINE_CELLS]
        parent_centers = centers[order]
        parent_half = halfwidths[order]
        offsets = (2.0 * np.arange(_REFINE_SPLIT) + 1.0) / _REFINE_SPLIT
        child_centers = (
            parent_centers[:, None] - parent_half[:, None] + offsets[None, :] * parent_half[:, None]
        ).ravel()
        child_half = np.repeat(parent_half / _REFINE_SPLIT, _REFINE_SPLIT)
        child_values = modulus_on_circle(f, c, child_centers)
        evaluations += len(child_centers)
        top = int(np.argmax(child_values))
        if child_values[top] > best_value:
            best_value = float(child_values[top])
            best_theta = float(child_centers[top])
        keep = np.ones(len(centers), dtype=bool)
        keep[order] = False
        centers = np.concatenate([centers[keep], child_centers])
        values = np.concatenate([values[keep], child_values])
        halfwidths = np.concatenate([halfwidths[keep], child_half])

    upper = float(np.max(values + halfwidths * lipschitz))
    return SupremumCertificate(
        lower=float(best_value),
        upper=upper,
        witness_theta=best_theta,
        grid_points=evaluations,
        lipschitz_bound=lipschitz,
    )


def mult_to_sup_lower_bound(n: int, k: int) -> Fraction:
    """Exact rational (1/2) * (4 * n**(k+2)) ** (-k).

    Whenever a degree-n polynomial with coefficients in {-1,0,1} has a root
    of multiplicity at most k at w = 1, its supremum on any circle
    {p + q*e^{i theta}} with 0 < p < 1 is at least this value.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Fraction(1, 2 * (4 * n ** (k + 2)) ** k)


def quotient_mass_bound(n: int, k: int) -> float:
    """(n+1) * (e*n/k)**k, bounding sum |b_j| over the quotient coefficients
    when a degree-n polynomial with |coeffs| <= 1 is divided by (w-1)**k."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return (n + 1) * (math.e * n / k) ** k
