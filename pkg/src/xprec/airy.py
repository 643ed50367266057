"""Airy function Ai and its derivative in both precisions.

Three regimes:

* |x| <= 1: the Maclaurin pair Ai = c1 f - c2 g.
* 1 < |x| <= 16: Taylor continuation of Ai'' = x Ai from anchors every 0.25.
  Positive-side anchors are generated from the asymptotic value at x = 16
  stepping towards the origin (Ai grows in that direction, so rounding
  errors shrink relative to it); negative-side anchors step outward from 0.
* 16 < |x| <= 100: the exponential / trigonometric asymptotic expansions.
"""

import functools

from util.errors import RangeError
from xprec import elementary as el
from xprec.precision import Precision, Real

AI_0 = "0.355028053887817239260063186004183176397979174199177"
MINUS_AIP_0 = "0.258819403792806798405183560189203963479091138354934"
SQRT_PI = "1.77245385090551602729816748334114518279754945612239"

MACLAURIN_LIMIT = 1.0
ASYMPTOTIC_LIMIT = 16.0
RANGE_LIMIT = 100.0
ANCHOR_SPACING = 0.25
_ANCHORS = int(ASYMPTOTIC_LIMIT / ANCHOR_SPACING)
_MAX_TERMS = 400
_ASYMPTOTIC_TERMS = 160


def airy(x: Real) -> tuple[Real, Real]:
    """Return (Ai(x), Ai'(x)) in the precision of `x`."""
    precision = Precision.of(x)
    ax = abs(float(x))
    if not ax <= RANGE_LIMIT:
        raise RangeError(f"Airy argument {float(x)!r} outside [-{RANGE_LIMIT}, {RANGE_LIMIT}]")
    if ax <= MACLAURIN_LIMIT:
        return _maclaurin(x, precision)
    if ax <= ASYMPTOTIC_LIMIT:
        return _continuation(x, precision)
    return _asymptotic(x, precision)


@functools.cache
def _constants(precision: Precision) -> tuple[Real, Real, Real]:
    return precision.scalar(AI_0), precision.scalar(MINUS_AIP_0), precision.scalar(SQRT_PI)


def _maclaurin(x: Real, precision: Precision) -> tuple[Real, Real]:
    c1, c2, _ = _constants(precision)
    eps = precision.eps
    x3 = x * x * x
    one = precision.scalar(1)
    f = t = gp = e = one
    g = b = x
    fp = d = x * x / 2
    k = 1
    while k < _MAX_TERMS:
        t = t * x3 / ((3 * k - 1) * (3 * k))
        b = b * x3 / ((3 * k) * (3 * k + 1))
        e = e * x3 / ((3 * k - 2) * (3 * k))
        if k > 1:
            d = d * x3 / ((3 * k - 3) * (3 * k - 1))
            fp = fp + d
        f = f + t
        g = g + b
        gp = gp + e
        if max(abs(float(t)), abs(float(b)), abs(float(e)), abs(float(d))) <= eps * 1e-2:
            break
        k += 1
    return c1 * f - c2 * g, c1 * fp - c2 * gp


def _taylor_step(x0: Real, y: Real, yp: Real, h: Real, eps: float) -> tuple[Real, Real]:
    """Advance (Ai, Ai') from x0 to x0 + h with the series of Ai'' = x Ai."""
    c_nm1 = y * 0  # c_{n-1}
    c_n = y  # c_n
    c_np1 = yp  # c_{n+1}
    value = y + yp * h
    slope = yp
    h_n = h  # h**(n+1)
    small = 0
    n = 0
    while n < _MAX_TERMS:
        c_np2 = (x0 * c_n + c_nm1) / ((n + 2) * (n + 1))
        term_d = c_np2 * h_n * (n + 2)
        h_n = h_n * h
        term_v = c_np2 * h_n
        value = value + term_v
        slope = slope + term_d
        scale = abs(float(value)) + abs(float(slope) * float(h)) + 1e-300
        if abs(float(term_v)) + abs(float(term_d) * float(h)) <= eps * 1e-2 * scale:
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        c_nm1, c_n, c_np1 = c_n, c_np1, c_np2
        n += 1
    return value, slope


@functools.cache
def _anchor_table(precision: Precision) -> tuple[list[tuple[Real, Real]], list[tuple[Real, Real]]]:
    eps = precision.eps
    step = precision.scalar(ANCHOR_SPACING)

    positive: list[tuple[Real, Real]] = [(step, step)] * (_ANCHORS + 1)
    positive[_ANCHORS] = _asymptotic(precision.scalar(ASYMPTOTIC_LIMIT), precision)
    for j in range(_ANCHORS, 0, -1):
        x0 = step * j
        positive[j - 1] = _taylor_step(x0, *positive[j], -step, eps)

    c1, c2, _ = _constants(precision)
    negative: list[tuple[Real, Real]] = [(c1, -c2)]
    for j in range(1, _ANCHORS + 1):
        x0 = -(step * (j - 1))
        negative.append(_taylor_step(x0, *negative[j - 1], -step, eps))
    return positive, negative


def _continuation(x: Real, precision: Precision) -> tuple[Real, Real]:
    positive, negative = _anchor_table(precision)
    j = int(round(abs(float(x)) / ANCHOR_SPACING))
    step = precision.scalar(ANCHOR_SPACING)
    if float(x) > 0:
        x0 = step * j
        y, yp = positive[j]
    else:
        x0 = -(step * j)
        y, yp = negative[j]
    return _taylor_step(x0, y, yp, x - x0, precision.eps)


@functools.cache
def _asymptotic_coefficients(precision: Precision) -> tuple[list[Real], list[Real]]:
    u = [precision.scalar(1)]
    v = [precision.scalar(1)]
    for k in range(1, _ASYMPTOTIC_TERMS):
        u.append(u[-1] * float((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / float((2 * k - 1) * 216 * k))
        v.append(-(u[-1] * float(6 * k + 1)) / float(6 * k - 1))
    return u, v


def _asymptotic(x: Real, precision: Precision) -> tuple[Real, Real]:
    _, _, sqrt_pi = _constants(precision)
    u, v = _asymptotic_coefficients(precision)
    eps = precision.eps
    t = abs(x)
    st = el.sqrt(t)
    quarter = el.sqrt(st)
    zeta = t * st * 2 / 3
    zinv = 1 / zeta
    one = precision.scalar(1)

    if float(x) > 0:
        sum_u = sum_v = power = one
        last = float("inf")
        for k in range(1, len(u)):
            power = -(power * zinv)
            term_u = u[k] * power
            size = abs(float(term_u))
            if size > last:
                break
            sum_u = sum_u + term_u
            sum_v = sum_v + v[k] * power
            last = size
            if size <= eps * 1e-2:
                break
        damping = el.exp(-zeta)
        ai = damping * sum_u / (sqrt_pi * quarter * 2)
        aip = -(quarter * damping * sum_v) / (sqrt_pi * 2)
        return ai, aip

    # oscillatory side: split the series into even and odd powers of 1/zeta
    even_u = even_v = power = one
    odd_u = odd_v = precision.scalar(0)
    last = float("inf")
    for k in range(1, len(u)):
        power = power * zinv
        sign = -1 if (k // 2) % 2 else 1
        term_u = u[k] * power
        size = abs(float(term_u))
        if size > last:
            break
        if k % 2:
            odd_u = odd_u + term_u * sign
            odd_v = odd_v + v[k] * power * sign
        else:
            even_u = even_u + term_u * sign
            even_v = even_v + v[k] * power * sign
        last = size
        if size <= eps * 1e-2:
            break
    s, c = el.sincos(zeta - el.pi(precision) / 4)
    ai = (c * even_u + s * odd_u) / (sqrt_pi * quarter)
    aip = quarter * (s * even_v - c * odd_v) / sqrt_pi
    return ai, aip
