from collections.abc import Callable
from enum import StrEnum, auto

import numpy as np

import xprec
from problems import KsqMode, Problem, ProblemEvaluator
from util.errors import IntegrandDomainError
from xprec import Precision, Real
from xprec.quadrature import adaptive_gauss, gauss_panel

_CLAMP = 1e-10


class Region(StrEnum):
    allowed = auto()
    forbidden = auto()


def _integrand(ev: ProblemEvaluator, E: Real, sign: int, mode: KsqMode, scale: float) -> Callable[[Real], Real]:
    """√(±k²), with slightly wrong-signed values next to a turning point clamped to zero."""

    def g(r: Real) -> Real:
        value = sign * ev.ksq(r, E, mode)
        if value < 0:
            if -float(value) > _CLAMP * scale:
                raise IntegrandDomainError(
                    f"k² has the wrong sign for a {'forbidden' if sign < 0 else 'allowed'} "
                    f"integral at r={float(r):.10g} (k²={float(-value if sign < 0 else value):.3g})"
                )
            return value * 0
        return xprec.sqrt(value)

    return g


def action_integral(
    p: Problem,
    E: Real,
    r_lo: Real,
    r_hi: Real,
    mode: Region = Region.allowed,
    *,
    ksq_mode: KsqMode = KsqMode.langer,
    rtol: float | None = None,
) -> Real:
    """∫k dr (allowed) or ∫K dr (forbidden) over [r_lo, r_hi].

    Both halves are mapped with r = endpoint ± t², which removes the square-root
    behaviour of the integrand whenever an endpoint is a turning point.
    """
    precision = Precision.of(E)
    if rtol is None:
        rtol = 1e-27 if precision is Precision.extended else 1e-14
    ev = p.evaluator(precision)
    r_lo, r_hi = precision.scalar(r_lo), precision.scalar(r_hi)
    if r_hi <= r_lo:
        return precision.scalar(0)
    sign = 1 if mode is Region.allowed else -1
    mid = (r_lo + r_hi) / 2
    scale = max(abs(float(ev.ksq(mid, E, ksq_mode))), 1e-300)
    g = _integrand(ev, E, sign, ksq_mode, scale)
    t_max = xprec.sqrt(mid - r_lo)
    atol = rtol * float(t_max) * scale**0.5

    def left(t: Real) -> Real:
        return 2 * t * g(r_lo + t * t)

    def right(t: Real) -> Real:
        return 2 * t * g(r_hi - t * t)

    total = adaptive_gauss(left, t_max * 0, t_max, precision, rtol=rtol, atol=atol)
    return total + adaptive_gauss(right, t_max * 0, t_max, precision, rtol=rtol, atol=atol)


def cumulative_action(
    ev: ProblemEvaluator,
    E: Real,
    anchor: Real,
    radii: list[Real],
    *,
    ksq_mode: KsqMode = KsqMode.langer,
    order: int = 10,
) -> list[Real]:
    """|∫_anchor^r |k| dr| at every r in `radii` by fixed Gauss panels in s = √|r − anchor|."""
    precision = ev.precision
    out: list[Real] = [precision.scalar(0)] * len(radii)
    for side in (1, -1):
        members = [i for i, r in enumerate(radii) if (r > anchor if side > 0 else r < anchor)]
        members.sort(key=lambda i: abs(float(radii[i] - anchor)))

        def integrand(s: Real, side: int = side) -> Real:
            return 2 * s * xprec.sqrt(abs(ev.ksq(anchor + side * s * s, E, ksq_mode)))

        s_prev = precision.scalar(0)
        total = precision.scalar(0)
        for i in members:
            s = xprec.sqrt(abs(radii[i] - anchor))
            if s > s_prev:
                total = total + gauss_panel(integrand, s_prev, s, order, precision)
                s_prev = s
            out[i] = total
    return out


def tail_radius(p: Problem, E: Real, outer: Real, target: float, *, points: int = 4000) -> float:
    """Radius beyond the outer turning point where ∫_b^r K dr reaches `target`, capped at r_max."""
    ev = p.evaluator(Precision.double)
    b, r_max = float(outer), float(ev.r_max)
    E_d = float(E)
    radii = b + (r_max - b) * np.linspace(0.0, 1.0, points) ** 2
    decay = np.sqrt(np.maximum([-ev.ksq(float(r), E_d, KsqMode.langer) for r in radii], 0.0))
    cumulative = np.concatenate(([0.0], np.cumsum(0.5 * (decay[1:] + decay[:-1]) * np.diff(radii))))
    hits = np.nonzero(cumulative >= target)[0]
    return float(radii[hits[0]]) if hits.size else r_max
