from enum import StrEnum, auto
from typing import Any, TypeAlias

from xprec.scalar import ExtScalar

Real: TypeAlias = float | ExtScalar


class Precision(StrEnum):
    double = auto()
    extended = auto()

    @classmethod
    def of(cls, value: Real) -> "Precision":
        return cls.extended if isinstance(value, ExtScalar) else cls.double

    @property
    def eps(self) -> float:
        """Unit roundoff of the scalar type."""
        return 1.1102230246251565e-16 if self is Precision.double else 1.2325951644078310e-32

    def scalar(self, value: Any) -> Real:
        """Convert an int, float, decimal string, Decimal, Fraction or scalar to this precision."""
        if self is Precision.extended:
            return ExtScalar.of(value)
        if isinstance(value, ExtScalar):
            return value.hi
        return float(value)
