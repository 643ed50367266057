import numpy as np
import pytest
from scipy.special import airy as scipy_airy

import xprec
from util.errors import RangeError
from xprec import ExtScalar

AI0 = ExtScalar.from_string("0.35502805388781723926006318600418317639797917419917724")
AIP0 = ExtScalar.from_string("-0.25881940379280679840518356018920396347909113835493458")


def test_values_at_origin_to_extended_precision():
    ai, aip = xprec.airy(ExtScalar(0))
    assert abs(float(ai - AI0)) < 1e-30
    assert abs(float(aip - AIP0)) < 1e-30


@pytest.mark.parametrize("x", np.linspace(-30.0, 30.0, 121))
def test_double_mode_matches_scipy(x):
    ai, aip = xprec.airy(float(x))
    ref_ai, ref_aip, _, _ = scipy_airy(x)
    assert ai == pytest.approx(ref_ai, rel=1e-10, abs=1e-14)
    assert aip == pytest.approx(ref_aip, rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("x", [-12.5, -3.0, 0.7, 2.0, 9.0, 20.0, 60.0])
def test_extended_agrees_with_double_and_solves_airy_equation(x):
    value = ExtScalar(x)
    ai, aip = xprec.airy(value)
    ref_ai, ref_aip, _, _ = scipy_airy(x)
    assert float(ai) == pytest.approx(ref_ai, rel=1e-10, abs=1e-14)
    assert float(aip) == pytest.approx(ref_aip, rel=1e-10, abs=1e-14)
    # Ai'' = x Ai through a central difference of Ai'
    h = ExtScalar.from_string("1e-8")
    _, up = xprec.airy(value + h)
    _, down = xprec.airy(value - h)
    second = (up - down) / (2 * h)
    assert float(second) == pytest.approx(float(value * ai), rel=1e-9, abs=1e-20)


def test_argument_outside_range():
    with pytest.raises(RangeError):
        xprec.airy(150.0)


def test_first_zero():
    a1 = ExtScalar.from_string("-2.338107410459767038489197252446735440638")
    ai, aip = xprec.airy(a1)
    assert abs(float(ai)) < 1e-29
    assert float(aip) == pytest.approx(0.70121082272069118, rel=1e-15)
    ai, _ = xprec.airy(float(a1))
    assert abs(ai) < 1e-15
