"""Exact scalars shared by every module: binomial coefficients, Gaussian
integers, and rationals whose denominator divides 4.

Nothing in the computation path ever touches floating point.  Translation
coordinates live in (1/4)Z, so all character values are Gaussian integers
and every multiplicity comes out as an exact integer or fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

#: denominators admitted for translation coordinates
QUARTER_DENOMINATORS = (1, 2, 4)


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer, with 0 for k outside 0..n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class GaussianInt:
    """A Gaussian integer re + im*i with exact ring arithmetic."""

    re: int = 0
    im: int = 0

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def scaled(self, k: int) -> "GaussianInt":
        """Multiply by an ordinary integer."""
        return GaussianInt(k * self.re, k * self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im}

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"


GI_ZERO = GaussianInt(0, 0)
GI_ONE = GaussianInt(1, 0)

# e^(-2*pi*i*q/4) for q = 0, 1, 2, 3
_QUARTER_TURNS = (
    GaussianInt(1, 0),
    GaussianInt(0, -1),
    GaussianInt(-1, 0),
    GaussianInt(0, 1),
)


def quarter_root_power(q: int) -> GaussianInt:
    """The unit e^(-2*pi*i*q/4); q is taken mod 4."""
    return _QUARTER_TURNS[q % 4]


def as_quarter(value: int | Fraction) -> Fraction:
    """Coerce to an exact rational whose denominator lies in {1, 2, 4}."""
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted; use int, Fraction or 'p/q'")
    frac = Fraction(value)
    if frac.denominator not in QUARTER_DENOMINATORS:
        raise ValueError(
            f"denominator {frac.denominator} unsupported: coordinates must lie in (1/4)Z"
        )
    return frac


def mod1(value: Fraction) -> Fraction:
    """Reduce into the half-open interval [0, 1)."""
    return value % 1


def parse_rational(value: int | str) -> Fraction:
    """Parse the interchange form of a coordinate: a bare integer or 'p/q'."""
    if isinstance(value, bool):
        raise TypeError(f"cannot parse {value!r} as a rational")
    if isinstance(value, int):
        return as_quarter(value)
    if isinstance(value, str):
        return as_quarter(Fraction(value.strip()))
    raise TypeError(f"cannot parse {value!r} as a rational")


def format_rational(value: Fraction) -> int | str:
    """Serialize to the interchange form: bare int, or 'p/q' for q in {2, 4}."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"
