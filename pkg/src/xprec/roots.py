from collections.abc import Callable

from xprec.precision import Real


def _width_ok(lo: Real, hi: Real, rtol: float, atol: float) -> bool:
    width = abs(float(hi - lo))
    return width <= max(rtol * max(abs(float(lo)), abs(float(hi))), atol)


def bisect(
    f: Callable[[Real], Real],
    lo: Real,
    hi: Real,
    *,
    f_lo: Real | None = None,
    rtol: float,
    atol: float = 0.0,
    max_iter: int = 400,
) -> tuple[Real, Real]:
    """Shrink a sign-change bracket of f; returns the final (lo, hi)."""
    if f_lo is None:
        f_lo = f(lo)
    positive_lo = float(f_lo) > 0.0
    for _ in range(max_iter):
        if _width_ok(lo, hi, rtol, atol):
            break
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            break
        f_mid = f(mid)
        if float(f_mid) == 0.0:
            return mid, mid
        if (float(f_mid) > 0.0) == positive_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def illinois(
    f: Callable[[Real], Real],
    lo: Real,
    hi: Real,
    *,
    f_lo: Real | None = None,
    f_hi: Real | None = None,
    rtol: float,
    atol: float = 0.0,
    max_iter: int = 200,
) -> Real:
    """Regula falsi with the Illinois modification, falling back to bisection when the
    bracket stops shrinking."""
    if f_lo is None:
        f_lo = f(lo)
    if f_hi is None:
        f_hi = f(hi)
    if float(f_lo) == 0.0:
        return lo
    if float(f_hi) == 0.0:
        return hi
    side = 0
    previous_width = abs(float(hi - lo))
    x = lo
    for _ in range(max_iter):
        x_new = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        if not (lo < x_new < hi or hi < x_new < lo):
            x_new = (lo + hi) / 2
        step = abs(float(x_new - x))
        x = x_new
        f_x = f(x)
        if float(f_x) == 0.0:
            return x
        if (float(f_x) > 0.0) == (float(f_hi) > 0.0):
            hi, f_hi = x, f_x
            if side == 1:
                f_lo = f_lo / 2
            side = 1
        else:
            lo, f_lo = x, f_x
            if side == -1:
                f_hi = f_hi / 2
            side = -1
        if _width_ok(lo, hi, rtol, atol):
            return x
        tolerance = max(rtol * max(abs(float(x)), 1e-300), atol)
        if step <= tolerance:
            # accept only once the root is bracketed within one tolerance of x
            toward = hi if side == -1 else lo
            guard = x + tolerance if toward > x else x - tolerance
            if not (lo < guard < hi or hi < guard < lo):
                return x
            f_guard = f(guard)
            if float(f_guard) == 0.0:
                return guard
            if (float(f_guard) > 0.0) != (float(f_x) > 0.0):
                return x
            if side == -1:
                lo, f_lo = guard, f_guard
            else:
                hi, f_hi = guard, f_guard
        width = abs(float(hi - lo))
        if width > 0.5 * previous_width:
            mid = (lo + hi) / 2
            f_mid = f(mid)
            if float(f_mid) == 0.0:
                return mid
            if (float(f_mid) > 0.0) == (float(f_hi) > 0.0):
                hi, f_hi = mid, f_mid
            else:
                lo, f_lo = mid, f_mid
            side = 0
            width = abs(float(hi - lo))
        previous_width = width
    return x
