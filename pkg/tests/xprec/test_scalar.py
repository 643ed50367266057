import math
from fractions import Fraction

import pytest

import xprec
from util.errors import DomainError
from xprec import ExtScalar, Precision


def test_square_keeps_second_order_term():
    x = ExtScalar(1.0, 2.0**-53)
    product = x * x
    assert product.to_fraction() == 1 + Fraction(1, 2**52) + Fraction(1, 2**106)


def test_sum_and_product_of_doubles_are_exact(rng):
    for a, b in rng.normal(scale=1e3, size=(200, 2)):
        a, b = float(a), float(b)
        assert (ExtScalar(a) + ExtScalar(b)).to_fraction() == Fraction(a) + Fraction(b)
        assert (ExtScalar(a) * ExtScalar(b)).to_fraction() == Fraction(a) * Fraction(b)


def test_decimal_text_survives_printing():
    text = "0.99999334014853888016"
    value = ExtScalar.from_string(text)
    assert f"{value:.20f}" == text
    reparsed = ExtScalar.from_string(value.to_string(32))
    assert abs((reparsed - value).to_fraction()) <= Fraction(1, 10**31)


def test_division_is_accurate_to_double_double(rng):
    for a, b in rng.uniform(0.1, 10.0, size=(100, 2)):
        exact = Fraction(float(a)) / Fraction(float(b))
        q = ExtScalar(float(a)) / ExtScalar(float(b))
        assert abs(q.to_fraction() - exact) <= abs(exact) * Fraction(1, 2**100)


def test_division_by_zero_raises():
    with pytest.raises(DomainError):
        ExtScalar(1) / ExtScalar(0)
    with pytest.raises(DomainError):
        ExtScalar(1) / 0.0


def test_overflow_is_infinite_with_zero_tail():
    xprec.clear_overflow_flag()
    assert not xprec.overflow_flag()
    big = ExtScalar(1e308) * 10
    assert big.hi == math.inf
    assert big.lo == 0.0
    assert not big.is_finite()
    assert xprec.overflow_flag()
    xprec.clear_overflow_flag()
    assert not xprec.overflow_flag()


@pytest.mark.parametrize(
    "make",
    [
        lambda: ExtScalar(1e300).square(),
        lambda: ExtScalar(1e300) / 1e-10,
        lambda: ExtScalar(1.5e308) + ExtScalar(1.5e308),
        lambda: ExtScalar(1e300).ldexp(100),
        lambda: xprec.exp(ExtScalar(800)),
    ],
)
def test_every_overflow_path_raises_the_flag(make):
    xprec.clear_overflow_flag()
    assert make().hi == math.inf
    assert xprec.overflow_flag()
    xprec.clear_overflow_flag()


def test_infinite_operands_do_not_raise_the_flag():
    xprec.clear_overflow_flag()
    infinite = ExtScalar.from_string("inf")
    assert (infinite * 2).hi == math.inf
    assert not xprec.overflow_flag()


def test_mixed_operands_and_comparisons():
    tenth = ExtScalar.from_string("0.1")
    assert 1 + tenth == tenth + 1
    assert abs(float(3 * tenth - ExtScalar.from_string("0.3"))) < 1e-31
    assert tenth < 0.1 or tenth > 0.1  # 0.1 is not a double
    assert 2 / ExtScalar(4) == 0.5
    assert -ExtScalar(2) ** 3 == -8


def test_zero_to_the_zero_is_undefined():
    with pytest.raises(DomainError):
        ExtScalar(0).ipow(0)


def test_precision_converts_to_its_scalar():
    assert isinstance(Precision.extended.scalar("1.5"), ExtScalar)
    assert Precision.double.scalar(ExtScalar(1.5, 1e-20)) == 1.5
    assert Precision.of(2.0) is Precision.double
    assert Precision.of(ExtScalar(2)) is Precision.extended
