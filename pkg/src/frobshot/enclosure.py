"""Directed rational enclosures for the irrational quantities the bounds need.

An :class:`Interval` is a closed interval with exact :class:`~fractions.Fraction`
endpoints.  Every primitive that leaves the rationals (square roots, integer
roots, pi) rounds its lower endpoint down and its upper endpoint up on a
``2**-precision`` grid, so the true value always lies inside.  Coarser grids
contain finer ones, which makes every derived bound loosen monotonically as
the precision shrinks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import gmpy2

DEFAULT_PRECISION = 128


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _floor_root(x: Fraction, k: int, precision: int) -> Fraction:
    """Largest multiple of 2**-precision whose k-th power is <= x (x >= 0)."""
    scaled = (x.numerator << (k * precision)) // x.denominator
    root, _ = gmpy2.iroot(gmpy2.mpz(scaled), k)
    return Fraction(int(root), 1 << precision)


def _ceil_root(x: Fraction, k: int, precision: int) -> Fraction:
    """Smallest multiple of 2**-precision whose k-th power is >= x (x >= 0)."""
    num = x.numerator << (k * precision)
    scaled = -(-num // x.denominator)
    root, exact = gmpy2.iroot(gmpy2.mpz(scaled), k)
    root = int(root)
    if exact and scaled * x.denominator == num:
        return Fraction(root, 1 << precision)
    return Fraction(root + 1, 1 << precision)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", _as_fraction(self.lo))
        object.__setattr__(self, "hi", _as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = _as_fraction(x)
        return cls(x, x)

    @classmethod
    def coerce(cls, x) -> "Interval":
        return x if isinstance(x, Interval) else cls.point(x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= _as_fraction(x) <= self.hi

    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval.coerce(other))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __mul__(self, other):
        other = Interval.coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * Interval.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return Interval.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        if k % 2 == 1 or self.lo >= 0:
            return Interval(min(self.lo ** k, self.hi ** k), max(self.lo ** k, self.hi ** k))
        if self.hi <= 0:
            return Interval(self.hi ** k, self.lo ** k)
        return Interval(Fraction(0), max(self.lo ** k, self.hi ** k))

    def floor_hi(self) -> int:
        """Floor of the upper endpoint: the safe integer value of an upper bound."""
        return math.floor(self.hi)

    def floor_lo(self) -> int:
        return math.floor(self.lo)

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        if self.is_exact:
            return f"Interval({self.lo})"
        return f"Interval([{float(self.lo)!r}, {float(self.hi)!r}])"


def root(x, k: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of the real k-th root of a non-negative rational or interval."""
    if k < 1:
        raise ValueError("root degree must be positive")
    x = Interval.coerce(x)
    if x.lo < 0:
        raise ValueError("root of a negative quantity")
    if k == 1:
        return x
    return Interval(_floor_root(x.lo, k, precision), _ceil_root(x.hi, k, precision))


def sqrt(x, precision: int = DEFAULT_PRECISION) -> Interval:
    return root(x, 2, precision)


def pi(precision: int = DEFAULT_PRECISION) -> Interval:
    bits = max(precision, 2)
    with gmpy2.context(precision=bits, round=gmpy2.RoundDown):
        lo = gmpy2.const_pi()
    with gmpy2.context(precision=bits, round=gmpy2.RoundUp):
        hi = gmpy2.const_pi()
    return Interval(Fraction(*map(int, lo.as_integer_ratio())),
                    Fraction(*map(int, hi.as_integer_ratio())))


def unit_ball_volume(k: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """Volume of the k-dimensional Euclidean unit ball, pi**(k/2) / Gamma(k/2 + 1).

    For even ``k = 2m`` this is ``pi**m / m!``; for odd ``k = 2m + 1`` it is
    ``2**(m+1) * pi**m / k!!``.  Only the power of pi is irrational.
    """
    if k < 1:
        raise ValueError("dimension must be at least 1")
    m = k // 2
    if k % 2 == 0:
        coeff = Fraction(1, math.factorial(m))
    else:
        double_fact = math.prod(range(k, 0, -2))
        coeff = Fraction(2 ** (m + 1), double_fact)
    return pi(precision) ** m * coeff
