import math

import pytest

import xprec
from util.errors import RefinementError
from xprec import ExtScalar, Precision
from xprec.quadrature import adaptive_gauss, gauss_legendre, gauss_panel


@pytest.mark.parametrize("n", [2, 5, 10, 20])
def test_gauss_rule_weights_and_exactness(precision, n):
    nodes, weights = gauss_legendre(n, precision)
    assert len(nodes) == n
    assert all(0 < float(t) < 1 for t in nodes)
    assert list(map(float, nodes)) == sorted(map(float, nodes))
    assert float(sum(weights, precision.scalar(0))) == pytest.approx(1.0, abs=1e-15)
    degree = 2 * n - 1
    integral = gauss_panel(lambda t: t**degree, precision.scalar(0), precision.scalar(1), n, precision)
    assert float(integral) == pytest.approx(1 / (degree + 1), rel=1e-14)


def test_adaptive_gauss_extended():
    one = ExtScalar(1)
    result = adaptive_gauss(xprec.exp, one * 0, one, Precision.extended, rtol=1e-30)
    e = xprec.exp(one)
    assert abs(float(result - (e - 1))) < 1e-29


def test_adaptive_gauss_double_oscillatory():
    result = adaptive_gauss(lambda t: math.sin(50 * t), 0.0, 1.0, Precision.double, rtol=1e-13)
    assert result == pytest.approx((1 - math.cos(50.0)) / 50, rel=1e-12)


def test_adaptive_gauss_gives_up():
    with pytest.raises(RefinementError):
        adaptive_gauss(
            lambda t: math.sin(1e4 * t), 0.0, 1.0, Precision.double, rtol=1e-15, order=2, max_panels=4
        )
