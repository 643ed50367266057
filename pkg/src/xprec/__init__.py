from xprec.airy import airy
from xprec.elementary import (atan, atan2, cbrt, cos, exp, floor, isfinite,
                              like, log, pi, pi_like, pow, sin, sincos, sqrt)
from xprec.precision import Precision, Real
from xprec.scalar import ExtScalar, clear_overflow_flag, overflow_flag

__all__ = [
    "ExtScalar",
    "Precision",
    "Real",
    "airy",
    "atan",
    "atan2",
    "cbrt",
    "clear_overflow_flag",
    "cos",
    "exp",
    "floor",
    "isfinite",
    "like",
    "log",
    "overflow_flag",
    "pi",
    "pi_like",
    "pow",
    "sin",
    "sincos",
    "sqrt",
]
