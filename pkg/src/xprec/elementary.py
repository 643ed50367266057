"""Elementary functions over `float` and `ExtScalar`.

Every function dispatches on the type of its argument, so solver code written
against this module runs unchanged in both precisions. The double-double
kernels are argument reduction plus Taylor series (exp, sin, cos) or one
Newton step from the binary64 value (log, atan2).
"""

import math
from fractions import Fraction
from math import factorial

from util.errors import DomainError
from xprec.precision import Precision, Real
from xprec.scalar import ONE, ZERO, ExtScalar, overflow_result

PI_EXT = ExtScalar.from_string("3.14159265358979323846264338327950288419716939937510582")
HALF_PI_EXT = PI_EXT.ldexp(-1)
TWO_PI_EXT = PI_EXT.ldexp(1)
LN2_EXT = ExtScalar.from_string("0.693147180559945309417232121458176568075500134360255")
E_EXT = ExtScalar.from_string("2.71828182845904523536028747135266249775724709369995957")

_INV_FACT = [ExtScalar.from_fraction(Fraction(1, factorial(k))) for k in range(40)]
_EXP_TERM_RTOL = 1.0e-34
_TRIG_TERM_RTOL = 1.0e-34


def pi(precision: Precision) -> Real:
    return PI_EXT if precision is Precision.extended else math.pi


def pi_like(x: Real) -> Real:
    return PI_EXT if isinstance(x, ExtScalar) else math.pi


def like(x: Real, value: float | int | str) -> Real:
    """`value` converted to the precision of `x`."""
    return Precision.of(x).scalar(value)


def isfinite(x: Real) -> bool:
    return x.is_finite() if isinstance(x, ExtScalar) else math.isfinite(x)


def floor(x: Real) -> Real:
    return x.floor() if isinstance(x, ExtScalar) else float(math.floor(x))


def sqrt(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _sqrt_ext(x)
    if x < 0.0:
        raise DomainError(f"sqrt of negative argument {x!r}")
    return math.sqrt(x)


def exp(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _exp_ext(x)
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def log(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _log_ext(x)
    if x <= 0.0:
        raise DomainError(f"log of non-positive argument {x!r}")
    return math.log(x)


def sin(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _sincos_ext(x)[0]
    return math.sin(x)


def cos(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _sincos_ext(x)[1]
    return math.cos(x)


def sincos(x: Real) -> tuple[Real, Real]:
    if isinstance(x, ExtScalar):
        return _sincos_ext(x)
    return math.sin(x), math.cos(x)


def atan2(y: Real, x: Real) -> Real:
    if isinstance(y, ExtScalar) or isinstance(x, ExtScalar):
        return _atan2_ext(ExtScalar.of(y), ExtScalar.of(x))
    if x == 0.0 and y == 0.0:
        raise DomainError("atan2(0, 0) is undefined")
    return math.atan2(y, x)


def atan(x: Real) -> Real:
    if isinstance(x, ExtScalar):
        return _atan2_ext(x, ONE)
    return math.atan(x)


def pow(x: Real, y: Real | int) -> Real:
    if isinstance(y, int) and not isinstance(y, bool):
        return x.ipow(y) if isinstance(x, ExtScalar) else x**y
    if isinstance(x, ExtScalar) or isinstance(y, ExtScalar):
        base = ExtScalar.of(x)
        if base.hi < 0.0:
            raise DomainError(f"pow of negative base {x!r} to non-integer exponent")
        if base.hi == 0.0:
            if ExtScalar.of(y).hi <= 0.0:
                raise DomainError("pow(0, y) with y <= 0")
            return ZERO
        return _exp_ext(ExtScalar.of(y) * _log_ext(base))
    if x < 0.0:
        raise DomainError(f"pow of negative base {x!r} to non-integer exponent")
    return math.pow(x, y)


def cbrt(x: Real) -> Real:
    """Real cube root, sign preserving."""
    if isinstance(x, ExtScalar):
        if x.hi == 0.0:
            return ZERO
        a = abs(x)
        r = ExtScalar(math.pow(a.hi, 1.0 / 3.0))
        r = r - (r * r * r - a) / (r * r * 3)
        return -r if x.hi < 0.0 else r
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


# double-double kernels


def _sqrt_ext(a: ExtScalar) -> ExtScalar:
    if a.hi == 0.0:
        return ZERO
    if a.hi < 0.0:
        raise DomainError(f"sqrt of negative argument {a!r}")
    if not a.is_finite():
        return a
    x = 1.0 / math.sqrt(a.hi)
    ax = a.hi * x
    residual = a - ExtScalar(ax).square()
    return ExtScalar(ax, residual.hi * (x * 0.5))


def _exp_ext(a: ExtScalar) -> ExtScalar:
    if a.hi > 709.78:
        return overflow_result(math.inf, a.hi)
    if a.hi < -745.0:
        return ZERO
    if a.hi == 0.0:
        return ONE
    m = math.floor(a.hi / LN2_EXT.hi + 0.5)
    r = (a - LN2_EXT * float(m)).ldexp(-9)
    r2 = r.square()
    s = r + r2.ldexp(-1)
    k = 3
    p = r2 * r
    term = p * _INV_FACT[k]
    while abs(term.hi) > _EXP_TERM_RTOL * abs(s.hi) and k < len(_INV_FACT) - 1:
        s = s + term
        k += 1
        p = p * r
        term = p * _INV_FACT[k]
    s = s + term
    for _ in range(9):
        s = s.ldexp(1) + s.square()
    return (s + 1.0).ldexp(m)


def _log_ext(a: ExtScalar) -> ExtScalar:
    if a.hi <= 0.0:
        raise DomainError(f"log of non-positive argument {a!r}")
    if not a.is_finite():
        return a
    x = ExtScalar(math.log(a.hi))
    return x + a * _exp_ext(-x) - 1.0


def _sincos_taylor(t: ExtScalar) -> tuple[ExtScalar, ExtScalar]:
    t2 = t.square()
    s = t
    term = t
    k = 1
    while True:
        term = -(term * t2)._div_float(float((2 * k) * (2 * k + 1)))
        s = s + term
        k += 1
        if abs(term.hi) <= _TRIG_TERM_RTOL * max(abs(s.hi), 1e-300):
            break
    c = ONE
    term = ONE
    k = 1
    while True:
        term = -(term * t2)._div_float(float((2 * k - 1) * (2 * k)))
        c = c + term
        k += 1
        if abs(term.hi) <= _TRIG_TERM_RTOL:
            break
    return s, c


def _sincos_ext(a: ExtScalar) -> tuple[ExtScalar, ExtScalar]:
    if a.hi == 0.0:
        return ZERO, ONE
    if not a.is_finite():
        raise DomainError(f"sin/cos of non-finite argument {a!r}")
    k = math.floor(a.hi / TWO_PI_EXT.hi + 0.5)
    r = a - TWO_PI_EXT * float(k) if k else a
    q = math.floor(r.hi / HALF_PI_EXT.hi + 0.5)
    t = r - HALF_PI_EXT * float(q) if q else r
    s, c = _sincos_taylor(t)
    match q % 4:
        case 0:
            return s, c
        case 1:
            return c, -s
        case 2:
            return -s, -c
        case _:
            return -c, s


def _atan2_ext(y: ExtScalar, x: ExtScalar) -> ExtScalar:
    if x.hi == 0.0:
        if y.hi == 0.0:
            raise DomainError("atan2(0, 0) is undefined")
        return HALF_PI_EXT if y.hi > 0.0 else -HALF_PI_EXT
    if y.hi == 0.0:
        return ZERO if x.hi > 0.0 else PI_EXT
    r = _sqrt_ext(x.square() + y.square())
    xx = x / r
    yy = y / r
    z = ExtScalar(math.atan2(y.hi, x.hi))
    sin_z, cos_z = _sincos_ext(z)
    if abs(xx.hi) > abs(yy.hi):
        return z + (yy - sin_z) / cos_z
    return z - (xx - cos_z) / sin_z
