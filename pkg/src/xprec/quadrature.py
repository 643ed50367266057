import functools
import math
from collections.abc import Callable

from util.errors import RefinementError
from xprec.precision import Precision, Real


def _legendre(n: int, x: Real) -> tuple[Real, Real]:
    """P_n(x) and P_n'(x) by the three-term recurrence."""
    p_prev = x * 0 + 1
    p = x
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, n * (x * p - p_prev) / (x * x - 1)


@functools.cache
def gauss_legendre(n: int, precision: Precision) -> tuple[tuple[Real, ...], tuple[Real, ...]]:
    """Nodes (ascending) and weights of the n-point Gauss–Legendre rule on [0, 1].

    Nodes are exactly symmetric about 1/2.
    """
    nodes: list[Real] = [precision.scalar(0)] * n
    weights: list[Real] = [precision.scalar(0)] * n
    for i in range((n + 1) // 2):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        if n % 2 and i == n // 2:
            x = 0.0
        else:
            for _ in range(100):
                p, dp = _legendre(n, x)
                dx = p / dp
                x -= dx
                if abs(dx) <= 1e-17:
                    break
        root = precision.scalar(x)
        if precision is Precision.extended and x != 0.0:
            for _ in range(2):
                p, dp = _legendre(n, root)
                root = root - p / dp
        _, dp = _legendre(n, root)
        weight = 1 / ((1 - root * root) * dp * dp)  # half of the [-1, 1] weight
        # the positive root lands at the upper end of [0, 1]
        nodes[n - 1 - i] = (1 + root) / 2
        nodes[i] = (1 - root) / 2
        weights[i] = weights[n - 1 - i] = weight
    return tuple(nodes), tuple(weights)


def gauss_panel(f: Callable[[Real], Real], a: Real, b: Real, n: int, precision: Precision) -> Real:
    nodes, weights = gauss_legendre(n, precision)
    h = b - a
    total = precision.scalar(0)
    for t, w in zip(nodes, weights):
        total = total + w * f(a + h * t)
    return total * h


def adaptive_gauss(
    f: Callable[[Real], Real],
    a: Real,
    b: Real,
    precision: Precision,
    *,
    rtol: float,
    atol: float = 0.0,
    order: int | None = None,
    max_panels: int = 4096,
) -> Real:
    """Integrate f over [a, b] by panel bisection until neighbouring panel sums agree."""
    if order is None:
        order = 20 if precision is Precision.extended else 10
    total = precision.scalar(0)
    width = abs(float(b) - float(a))
    if width == 0.0:
        return total
    stack: list[tuple[Real, Real, Real]] = [(a, b, gauss_panel(f, a, b, order, precision))]
    panels = 0
    while stack:
        lo, hi, whole = stack.pop()
        mid = (lo + hi) / 2
        left = gauss_panel(f, lo, mid, order, precision)
        right = gauss_panel(f, mid, hi, order, precision)
        refined = left + right
        share = abs(float(hi) - float(lo)) / width
        if abs(float(refined - whole)) <= max(rtol * abs(float(refined)), atol * share, 1e-300):
            total = total + refined
            continue
        panels += 1
        if panels > max_panels:
            raise RefinementError(
                f"adaptive quadrature did not converge near r={float(mid):.6g}", location=float(mid)
            )
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return total
