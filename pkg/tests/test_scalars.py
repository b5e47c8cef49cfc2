import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiwave.scalars import (
    INV_SQRT2,
    ONE,
    ZERO,
    QPi,
    QuadReal,
    floor_log2,
    qpi_compare,
    quad_mul,
    quad_sign,
    rational_from_json,
    rational_to_json,
    two_adic_valuation,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) < 10**6)
quads = st.builds(QuadReal, rationals, rationals)


def test_quad_sign_examples():
    assert quad_sign(QuadReal(0, 0)) == 0
    assert quad_sign(QuadReal(0, Fraction(1, 2))) == 1
    # 3 - 2 sqrt2 > 0 because 9 > 8
    assert quad_sign(QuadReal(3, -2)) == 1
    assert quad_sign(QuadReal(-3, 2)) == -1
    assert quad_sign(QuadReal(1, -1)) == -1


def test_quad_mul_examples():
    assert quad_mul(INV_SQRT2, INV_SQRT2) == QuadReal(Fraction(1, 2), 0)
    x = QuadReal(Fraction(2, 3), Fraction(-5, 7))
    assert quad_mul(ONE, x) == x
    assert quad_mul(INV_SQRT2, -INV_SQRT2) == QuadReal(Fraction(-1, 2), 0)


def test_qpi_compare_examples():
    assert qpi_compare(QPi(Fraction(4, 7)), QPi(Fraction(6, 7))) == -1
    assert qpi_compare(QPi(Fraction(4, 7)), QPi(Fraction(4, 7))) == 0
    assert qpi_compare(QPi(Fraction(8, 7)), QPi(1)) == 1
    assert QPi(Fraction(8, 7)) > QPi(1)


@given(quads, quads, quads)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + (-x) == ZERO


@given(quads)
def test_inverse(x):
    if x:
        assert x * x.inverse() == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            x.inverse()


@given(quads)
def test_sign_of_square_and_zero(x):
    assert quad_sign(x * x) >= 0
    assert (quad_sign(x) == 0) == (x == QuadReal(0, 0))


@given(quads)
def test_sign_agrees_with_float_when_clear(x):
    val = float(x.a) + float(x.b) * math.sqrt(2)
    if abs(val) > 1e-6 * (1 + abs(float(x.a))):
        assert quad_sign(x) == (1 if val > 0 else -1)


@given(quads, quads)
def test_normalized_after_operations(x, y):
    for r in (x + y, x * y, x - y):
        for c in (r.a, r.b):
            assert math.gcd(c.numerator, c.denominator) == 1
            assert c.denominator > 0


@given(rationals)
def test_rational_json_roundtrip(x):
    assert rational_from_json(rational_to_json(x)) == x


def test_rational_json_is_decimal_strings():
    assert rational_to_json(Fraction(-2**80, 3)) == {"num": str(-2**80), "den": "3"}


@given(st.fractions(min_value=Fraction(1, 10**9), max_value=10**9))
def test_floor_log2(x):
    j = floor_log2(x)
    assert Fraction(2) ** j <= x < Fraction(2) ** (j + 1)


@pytest.mark.parametrize("k,v", [(1, 0), (-1, 0), (2, 1), (12, 2), (-64, 6), (2**40 * 3, 40)])
def test_two_adic_valuation(k, v):
    assert two_adic_valuation(k) == v
