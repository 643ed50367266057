"""Double-double scalar: a real number stored as the unevaluated sum hi + lo
of two binary64 floats with |lo| <= ulp(hi)/2 (about 32 significant digits).

The error-free transformations follow the usual Dekker/Knuth constructions;
`math.fma` is used for the product when the interpreter provides it.
"""

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Self

from util.errors import DomainError

_SPLITTER = 134217729.0  # 2**27 + 1
_SPLIT_THRESHOLD = 6.69692879491417e299
_FMA = getattr(math, "fma", None)


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    """Requires |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def split(a: float) -> tuple[float, float]:
    if a > _SPLIT_THRESHOLD or a < -_SPLIT_THRESHOLD:
        a *= 3.7252902984619140625e-09  # 2**-28
        t = _SPLITTER * a
        hi = t - (t - a)
        return hi * 268435456.0, (a - hi) * 268435456.0
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod_split(a: float, b: float) -> tuple[float, float]:
    p = a * b
    a_hi, a_lo = split(a)
    b_hi, b_lo = split(b)
    return p, ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo


def _two_prod_fma(a: float, b: float) -> tuple[float, float]:
    p = a * b
    return p, _FMA(a, b, -p)  # type: ignore[misc]


two_prod = _two_prod_fma if _FMA is not None else _two_prod_split


def _finite(x: float) -> bool:
    return x - x == 0.0


_overflow = False


def overflow_flag() -> bool:
    """Sticky flag: an operation on finite operands produced ±inf since the last clear."""
    return _overflow


def clear_overflow_flag() -> None:
    global _overflow
    _overflow = False


def overflow_result(s: float, *operands: float) -> "ExtScalar":
    """±inf result with lo = 0; raises the overflow flag unless an operand was already non-finite."""
    global _overflow
    if math.isinf(s) and all(_finite(x) for x in operands):
        _overflow = True
    return ExtScalar._raw(s, 0.0)


class ExtScalar:
    __slots__ = ("hi", "lo")

    hi: float
    lo: float

    def __init__(self, hi: float | int = 0.0, lo: float = 0.0) -> None:
        if isinstance(hi, int) and not isinstance(hi, bool):
            h = float(hi)
            if _finite(h):
                lo = float(hi - int(h))
            hi = h
        s, e = two_sum(float(hi), float(lo))
        if not _finite(s):
            s, e = s, 0.0
        self.hi = s
        self.lo = e

    @classmethod
    def _raw(cls, hi: float, lo: float) -> "ExtScalar":
        obj = object.__new__(cls)
        if not _finite(hi):
            lo = 0.0
        obj.hi = hi
        obj.lo = lo
        return obj

    @classmethod
    def of(cls, value: Any) -> "ExtScalar":
        if isinstance(value, ExtScalar):
            return value
        if isinstance(value, (int, float)):
            return cls(value)
        if isinstance(value, (str, Decimal)):
            return cls.from_string(str(value))
        if isinstance(value, Fraction):
            return cls.from_fraction(value)
        raise TypeError(f"cannot convert {type(value).__name__} to ExtScalar")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "ExtScalar":
        hi = float(value)
        if not _finite(hi):
            return cls._raw(hi, 0.0)
        lo = float(value - Fraction(hi))
        return cls(hi, lo)

    @classmethod
    def from_string(cls, text: str) -> "ExtScalar":
        """Parse a decimal literal: nearest double first, then the exact residual."""
        text = text.strip().replace("_", "")
        lowered = text.lower()
        if lowered in ("inf", "+inf", "infinity", "+infinity"):
            return cls._raw(math.inf, 0.0)
        if lowered in ("-inf", "-infinity"):
            return cls._raw(-math.inf, 0.0)
        if lowered == "nan":
            return cls._raw(math.nan, 0.0)
        try:
            exact = Fraction(Decimal(text))
        except ArithmeticError as e:
            raise DomainError(f"not a decimal number: {text!r}") from e
        return cls.from_fraction(exact)

    def to_fraction(self) -> Fraction:
        return Fraction(self.hi) + Fraction(self.lo)

    def to_string(self, digits: int = 32) -> str:
        """Scientific notation with `digits` significant digits."""
        if not _finite(self.hi):
            return repr(self.hi)
        if self.hi == 0.0:
            return f"{0.0:.{digits - 1}e}" if math.copysign(1.0, self.hi) > 0 else f"-{0.0:.{digits - 1}e}"
        with localcontext() as ctx:
            ctx.prec = digits + 20
            value = Decimal(self.hi) + Decimal(self.lo)
        return f"{value:.{digits - 1}e}"

    def __repr__(self) -> str:
        return f"ExtScalar('{self.to_string(32)}')"

    def __str__(self) -> str:
        return self.to_string(32)

    def __format__(self, spec: str) -> str:
        if not spec:
            return str(self)
        if spec.endswith(("e", "E", "f", "F", "g", "G")):
            with localcontext() as ctx:
                ctx.prec = 60
                value = Decimal(self.hi) + Decimal(self.lo) if _finite(self.hi) else Decimal(self.hi)
            return format(value, spec)
        return format(float(self), spec)

    # conversions

    def __float__(self) -> float:
        return self.hi

    def __int__(self) -> int:
        return int(self.to_fraction()) if _finite(self.hi) else int(self.hi)

    def __bool__(self) -> bool:
        return self.hi != 0.0

    def __hash__(self) -> int:
        return hash(self.hi) if self.lo == 0.0 else hash((self.hi, self.lo))

    def is_finite(self) -> bool:
        return _finite(self.hi)

    # arithmetic kernels

    def _add(self, other: "ExtScalar") -> "ExtScalar":
        s, e = two_sum(self.hi, other.hi)
        if not _finite(s):
            return overflow_result(s, self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e += t
        s, e = quick_two_sum(s, e)
        e += f
        s, e = quick_two_sum(s, e)
        return ExtScalar._raw(s, e)

    def _add_float(self, b: float) -> "ExtScalar":
        s, e = two_sum(self.hi, b)
        if not _finite(s):
            return overflow_result(s, self.hi, b)
        e += self.lo
        s, e = quick_two_sum(s, e)
        return ExtScalar._raw(s, e)

    def _mul(self, other: "ExtScalar") -> "ExtScalar":
        p, e = two_prod(self.hi, other.hi)
        if not _finite(p):
            return overflow_result(p, self.hi, other.hi)
        s, f = two_sum(p, self.hi * other.lo + self.lo * other.hi)
        f += e + self.lo * other.lo
        s, f = quick_two_sum(s, f)
        return ExtScalar._raw(s, f)

    def _mul_float(self, b: float) -> "ExtScalar":
        p, e = two_prod(self.hi, b)
        if not _finite(p):
            return overflow_result(p, self.hi, b)
        e += self.lo * b
        p, e = quick_two_sum(p, e)
        return ExtScalar._raw(p, e)

    def _div(self, other: "ExtScalar") -> "ExtScalar":
        if other.hi == 0.0:
            raise DomainError("division by zero")
        q1 = self.hi / other.hi
        if not _finite(q1):
            return overflow_result(q1, self.hi, other.hi)
        r = self - other._mul_float(q1)
        q2 = r.hi / other.hi
        r = r - other._mul_float(q2)
        q3 = r.hi / other.hi
        q1, q2 = quick_two_sum(q1, q2)
        return ExtScalar._raw(q1, q2)._add_float(q3)

    def _div_float(self, b: float) -> "ExtScalar":
        if b == 0.0:
            raise DomainError("division by zero")
        q1 = self.hi / b
        if not _finite(q1):
            return overflow_result(q1, self.hi, b)
        p, e = two_prod(q1, b)
        s, t = two_sum(self.hi, -p)
        t -= e
        t += self.lo
        q2 = (s + t) / b
        q1, q2 = quick_two_sum(q1, q2)
        return ExtScalar._raw(q1, q2)

    def square(self) -> "ExtScalar":
        p, e = two_prod(self.hi, self.hi)
        if not _finite(p):
            return overflow_result(p, self.hi)
        s, f = two_sum(p, 2.0 * self.hi * self.lo)
        f += e + self.lo * self.lo
        s, f = quick_two_sum(s, f)
        return ExtScalar._raw(s, f)

    def ldexp(self, k: int) -> "ExtScalar":
        try:
            return ExtScalar._raw(math.ldexp(self.hi, k), math.ldexp(self.lo, k))
        except OverflowError:
            return overflow_result(math.copysign(math.inf, self.hi), self.hi)

    # numeric protocol

    def __add__(self, other: Any) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            return self._add(other)
        if isinstance(other, float):
            return self._add_float(other)
        if isinstance(other, int):
            return self._add(ExtScalar(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "ExtScalar":
        return ExtScalar._raw(-self.hi, -self.lo)

    def __pos__(self) -> Self:
        return self

    def __sub__(self, other: Any) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            return self._add(-other)
        if isinstance(other, float):
            return self._add_float(-other)
        if isinstance(other, int):
            return self._add(ExtScalar(-other))
        return NotImplemented

    def __rsub__(self, other: Any) -> "ExtScalar":
        if isinstance(other, (int, float)):
            return (-self).__add__(other)
        return NotImplemented

    def __mul__(self, other: Any) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            return self._mul(other)
        if isinstance(other, float):
            return self._mul_float(other)
        if isinstance(other, int):
            return self._mul(ExtScalar(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            return self._div(other)
        if isinstance(other, float):
            return self._div_float(other)
        if isinstance(other, int):
            return self._div(ExtScalar(other))
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "ExtScalar":
        if isinstance(other, (int, float)):
            return ExtScalar(other)._div(self)
        return NotImplemented

    def __pow__(self, exponent: Any) -> "ExtScalar":
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            return self.ipow(exponent)
        from xprec.elementary import pow as _pow

        return _pow(self, exponent)

    def ipow(self, n: int) -> "ExtScalar":
        if n == 0:
            if self.hi == 0.0:
                raise DomainError("0**0 is undefined")
            return ExtScalar._raw(1.0, 0.0)
        base = self
        result = ExtScalar._raw(1.0, 0.0)
        k = abs(n)
        while k:
            if k & 1:
                result = result._mul(base)
            k >>= 1
            if k:
                base = base.square()
        return ExtScalar._raw(1.0, 0.0)._div(result) if n < 0 else result

    def __abs__(self) -> "ExtScalar":
        return -self if self.hi < 0.0 else self

    def _key(self, other: Any) -> tuple[tuple[float, float], tuple[float, float]] | None:
        if isinstance(other, ExtScalar):
            return (self.hi, self.lo), (other.hi, other.lo)
        if isinstance(other, (int, float)):
            o = ExtScalar(other)
            return (self.hi, self.lo), (o.hi, o.lo)
        return None

    def __eq__(self, other: object) -> bool:
        key = self._key(other)
        return NotImplemented if key is None else key[0] == key[1]  # type: ignore[return-value]

    def __lt__(self, other: Any) -> bool:
        key = self._key(other)
        return NotImplemented if key is None else key[0] < key[1]  # type: ignore[return-value]

    def __le__(self, other: Any) -> bool:
        key = self._key(other)
        return NotImplemented if key is None else key[0] <= key[1]  # type: ignore[return-value]

    def __gt__(self, other: Any) -> bool:
        key = self._key(other)
        return NotImplemented if key is None else key[0] > key[1]  # type: ignore[return-value]

    def __ge__(self, other: Any) -> bool:
        key = self._key(other)
        return NotImplemented if key is None else key[0] >= key[1]  # type: ignore[return-value]

    def floor(self) -> "ExtScalar":
        hi = math.floor(self.hi)
        if hi == self.hi:
            return ExtScalar(hi, math.floor(self.lo))
        return ExtScalar._raw(float(hi), 0.0)

    def __round__(self, ndigits: None = None) -> int:
        return int((self + 0.5).floor())


ZERO = ExtScalar._raw(0.0, 0.0)
ONE = ExtScalar._raw(1.0, 0.0)
