import math
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

import xprec
from util.errors import DomainError
from xprec import ExtScalar, Precision

PI_40 = Fraction("3.141592653589793238462643383279502884197")


def _rel(a: ExtScalar, b: ExtScalar) -> float:
    return abs(float(a - b)) / abs(float(b))


def test_pi_has_double_double_accuracy():
    assert abs(xprec.pi(Precision.extended).to_fraction() - PI_40) < Fraction(1, 10**31)


def test_exp_of_one_is_e():
    e = Fraction("2.718281828459045235360287471352662497757")
    assert abs(xprec.exp(ExtScalar(1)).to_fraction() - e) < Fraction(1, 10**30)
    assert abs(float(xprec.log(ExtScalar.from_string("2.718281828459045235360287471352662497757")) - 1)) < 1e-30


def test_exp_and_log_against_decimal(rng):
    with localcontext() as ctx:
        ctx.prec = 45
        for x in rng.uniform(-30.0, 30.0, size=40):
            expected = Fraction(Decimal(float(x)).exp())
            got = xprec.exp(ExtScalar(float(x))).to_fraction()
            assert abs(got - expected) <= expected * Fraction(1, 10**30)
        for x in rng.uniform(1e-3, 1e3, size=40):
            expected = Fraction(Decimal(float(x)).ln())
            got = xprec.log(ExtScalar(float(x))).to_fraction()
            assert abs(got - expected) <= max(abs(expected), 1) * Fraction(1, 10**30)


def test_exp_inverts_log(rng):
    for x in rng.uniform(1e-3, 50.0, size=50):
        value = ExtScalar(float(x))
        assert _rel(xprec.exp(xprec.log(value)), value) < 1e-30


def test_sin_cos_identity_and_float_agreement(rng):
    for x in rng.uniform(-40.0, 40.0, size=50):
        value = ExtScalar(float(x))
        s, c = xprec.sincos(value)
        assert abs(float(s * s + c * c - 1)) < 1e-30
        assert float(xprec.sin(value)) == pytest.approx(math.sin(float(x)), abs=1e-15)
        assert float(xprec.cos(value)) == pytest.approx(math.cos(float(x)), abs=1e-15)


def test_sqrt_and_cbrt():
    two = ExtScalar(2)
    root = xprec.sqrt(two)
    assert abs(float(root * root - 2)) < 1e-31
    assert abs(float(xprec.cbrt(ExtScalar(-27)) + 3)) < 1e-30
    assert xprec.cbrt(-8.0) == pytest.approx(-2.0)


def test_atan2_quadrants(precision):
    one = precision.scalar(1)
    pi = xprec.pi(precision)
    assert float(xprec.atan2(one, one) - pi / 4) == pytest.approx(0.0, abs=1e-15)
    assert float(xprec.atan2(-one, -one) + 3 * pi / 4) == pytest.approx(0.0, abs=1e-15)
    assert float(xprec.atan(one) * 4 - pi) == pytest.approx(0.0, abs=1e-15)


def test_extended_atan_against_series_identity():
    # 4 atan(1/5) − atan(1/239) = π/4
    five = ExtScalar(1) / 5
    machin = 4 * xprec.atan(five) - xprec.atan(ExtScalar(1) / 239)
    assert abs(float(machin * 4 - xprec.pi(Precision.extended))) < 1e-30


def test_pow_matches_exp_log():
    x = ExtScalar.from_string("2.5")
    assert _rel(xprec.pow(x, ExtScalar.from_string("0.5")), xprec.sqrt(x)) < 1e-30
    assert abs(float(xprec.pow(x, 2) - x * x)) < 1e-30


@pytest.mark.parametrize(
    "call",
    [
        lambda: xprec.sqrt(ExtScalar(-1)),
        lambda: xprec.sqrt(-1.0),
        lambda: xprec.log(ExtScalar(0)),
        lambda: xprec.log(-2.0),
        lambda: xprec.atan2(0.0, 0.0),
        lambda: xprec.pow(ExtScalar(-2), ExtScalar.from_string("0.5")),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
