"""Exact scalars: rationals, rational multiples of pi, and Q(sqrt 2).

Rationals are plain :class:`fractions.Fraction` objects; they are always in
lowest terms with a positive denominator and use Python's unbounded ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

SQRT2_FLOAT = math.sqrt(2.0)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def rational_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj) -> Fraction:
    den = int(obj["den"])
    if den <= 0:
        raise ValueError("rational denominator must be positive")
    return Fraction(int(obj["num"]), den)


def floor_log2(x: Fraction) -> int:
    """Largest integer j with 2**j <= x, for x > 0."""
    if x <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    j = x.numerator.bit_length() - x.denominator.bit_length()
    # the bit-length estimate is off by at most one
    if _pow2(j) > x:
        j -= 1
    elif _pow2(j + 1) <= x:
        j += 1
    return j


def _pow2(j: int) -> Fraction:
    return Fraction(1 << j) if j >= 0 else Fraction(1, 1 << -j)


pow2 = _pow2


def two_adic_valuation(k: int) -> int:
    if k == 0:
        raise ValueError("the 2-adic valuation of 0 is infinite")
    return (k & -k).bit_length() - 1


@dataclass(frozen=True, order=True)
class QPi:
    """The real number ``coeff * pi``."""

    coeff: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_rational(self.coeff))

    def __add__(self, other: QPi) -> QPi:
        if not isinstance(other, QPi):
            return NotImplemented
        return QPi(self.coeff + other.coeff)

    def __sub__(self, other: QPi) -> QPi:
        if not isinstance(other, QPi):
            return NotImplemented
        return QPi(self.coeff - other.coeff)

    def __neg__(self) -> QPi:
        return QPi(-self.coeff)

    def __mul__(self, r) -> QPi:
        if isinstance(r, QPi):
            return NotImplemented
        return QPi(self.coeff * as_rational(r))

    __rmul__ = __mul__

    def __truediv__(self, r) -> QPi:
        return QPi(self.coeff / as_rational(r))

    def __abs__(self) -> QPi:
        return QPi(abs(self.coeff))

    def __float__(self) -> float:
        return float(self.coeff) * math.pi

    def __bool__(self) -> bool:
        return self.coeff != 0

    def __str__(self) -> str:
        if self.coeff == 0:
            return "0"
        c = self.coeff
        head = "" if abs(c.numerator) == 1 else str(abs(c.numerator))
        sgn = "-" if c < 0 else ""
        tail = "" if c.denominator == 1 else f"/{c.denominator}"
        return f"{sgn}{head}pi{tail}"

    def to_json(self) -> dict:
        return {"pi_coeff": rational_to_json(self.coeff)}

    @classmethod
    def from_json(cls, obj) -> QPi:
        return cls(rational_from_json(obj["pi_coeff"]))


def qpi_compare(x: QPi, y: QPi) -> int:
    """Three-way comparison: -1, 0 or +1."""
    return (x.coeff > y.coeff) - (x.coeff < y.coeff)


@dataclass(frozen=True)
class QuadReal:
    """An element ``a + b*sqrt(2)`` of Q(sqrt 2)."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))

    @classmethod
    def coerce(cls, x) -> QuadReal:
        if isinstance(x, QuadReal):
            return x
        return cls(as_rational(x), Fraction(0))

    def sign(self) -> int:
        return quad_sign(self)

    def __add__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return QuadReal(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return QuadReal(self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> QuadReal:
        return QuadReal(-self.a, -self.b)

    def __mul__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return quad_mul(self, o)

    __rmul__ = __mul__

    def conjugate_galois(self) -> QuadReal:
        """The field automorphism sqrt2 -> -sqrt2 (not complex conjugation)."""
        return QuadReal(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> QuadReal:
        nrm = self.norm()
        if nrm == 0:
            # a^2 = 2 b^2 has no rational solution except 0
            raise ZeroDivisionError("QuadReal division by zero")
        return QuadReal(self.a / nrm, -self.b / nrm)

    def __truediv__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> QuadReal:
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __abs__(self) -> QuadReal:
        return -self if quad_sign(self) < 0 else self

    def __lt__(self, other) -> bool:
        return quad_sign(self - QuadReal.coerce(other)) < 0

    def __le__(self, other) -> bool:
        return quad_sign(self - QuadReal.coerce(other)) <= 0

    def __gt__(self, other) -> bool:
        return quad_sign(self - QuadReal.coerce(other)) > 0

    def __ge__(self, other) -> bool:
        return quad_sign(self - QuadReal.coerce(other)) >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT2_FLOAT

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt2"

    def to_json(self) -> dict:
        return {"a": rational_to_json(self.a), "b": rational_to_json(self.b)}

    @classmethod
    def from_json(cls, obj) -> QuadReal:
        return cls(rational_from_json(obj["a"]), rational_from_json(obj["b"]))


def _coerce_or_none(x):
    if isinstance(x, QuadReal):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QuadReal(x, 0)
    return None


def quad_sign(x: QuadReal) -> int:
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # mixed signs: |a| versus |b| sqrt2, compared through squares
    lhs = x.a * x.a
    rhs = 2 * x.b * x.b
    return sa if lhs > rhs else sb


def quad_mul(x: QuadReal, y: QuadReal) -> QuadReal:
    return QuadReal(x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a)


ZERO = QuadReal(0, 0)
ONE = QuadReal(1, 0)
HALF = QuadReal(Fraction(1, 2), 0)
INV_SQRT2 = QuadReal(0, Fraction(1, 2))
