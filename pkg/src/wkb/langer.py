"""Langer-uniform WKB wavefunction used to seed the quasilinearization.

Each branch is χ_i(r) = c_i (ξ/|k²|)^{1/4} Ai(d ξ), ξ = (3/2 |∫_i^r |k| dr|)^{2/3},
anchored at one turning point; d = +1 on the forbidden side of the anchor.
The inner branch is used up to the match point, the outer branch beyond it.
"""

from dataclasses import dataclass, field

import numpy as np
import pandas as pd

import xprec
from problems import KsqMode, Parity, Problem, ProblemEvaluator, StateSpec
from util.config_yml.settings import SolverSettings, WkbSettings
from util.errors import MatchError
from util.logging import logging
from wkb.action import Region, action_integral, cumulative_action, tail_radius
from wkb.turning_points import TurningPoints, find_turning_points
from xprec import Precision, Real
from xprec.roots import bisect

_MATCH_SCAN = 400


class _Branch:
    """One Airy branch anchored at a turning point; sigma is dx/dr's sign."""

    def __init__(self, ev: ProblemEvaluator, E: Real, anchor: Real, sigma: int, constant: Real) -> None:
        self.ev = ev
        self.E = E
        self.anchor = anchor
        self.sigma = sigma
        self.constant = constant
        slope, curvature = ev.dksq_dr(anchor, E, KsqMode.langer)
        self._slope = abs(slope)
        self._near_limit = -curvature / (10 * slope)
        self._near = (1e-10 if ev.precision is Precision.extended else 1e-6) * max(abs(float(anchor)), 1.0)

    def value(self, r: Real, action: Real) -> tuple[Real, Real]:
        """χ_i and χ_i' at r, given the action |∫_anchor^r |k||."""
        ev, E = self.ev, self.E
        s = r - self.anchor
        if abs(float(s)) < self._near:
            rate = self.sigma * xprec.cbrt(self._slope)
            x = rate * s
            amplitude = 1 / xprec.sqrt(xprec.cbrt(self._slope))
            log_slope = self._near_limit
            ai, aip = xprec.airy(x)
            return self.constant * amplitude * ai, self.constant * amplitude * (log_slope * ai + aip * rate)
        ksq = ev.ksq(r, E, KsqMode.langer)
        dksq, _ = ev.dksq_dr(r, E, KsqMode.langer)
        forbidden = float(s) * self.sigma > 0
        root = xprec.cbrt(action * 3 / 2)
        xi = root * root
        magnitude = abs(ksq)
        k = xprec.sqrt(magnitude)
        x = xi if forbidden else -xi
        rate = self.sigma * k / root
        amplitude = xprec.sqrt(xprec.sqrt(xi / magnitude))
        direction = 1 if s > 0 else -1
        log_slope = (direction * k / (xi * root) - dksq / ksq) / 4
        ai, aip = xprec.airy(x)
        return self.constant * amplitude * ai, self.constant * amplitude * (log_slope * ai + aip * rate)

    def values(self, radii: list[Real]) -> tuple[list[Real], list[Real]]:
        actions = cumulative_action(self.ev, self.E, self.anchor, radii)
        pairs = [self.value(r, w) for r, w in zip(radii, actions)]
        return [chi for chi, _ in pairs], [dchi for _, dchi in pairs]

    def at(self, r: Real) -> tuple[Real, Real]:
        """Single evaluation with an adaptive action integral."""
        lo, hi = (self.anchor, r) if r >= self.anchor else (r, self.anchor)
        p = self.ev.problem
        if self.ev.ksq((lo + hi) / 2, self.E, KsqMode.langer) >= 0:
            action = action_integral(p, self.E, lo, hi)
        else:
            action = action_integral(p, self.E, lo, hi, Region.forbidden)
        return self.value(r, action)


@dataclass
class LangerSeed:
    E: Real
    turning: TurningPoints
    match_point: Real | None
    grid: list[Real]
    chi0: list[Real]
    chi0_prime: list[Real]
    c_a: Real | None
    c_b: Real
    derivative_jump: float
    _inner: _Branch | None = field(default=None, repr=False)
    _outer: _Branch | None = field(default=None, repr=False)

    def evaluate(self, radii: list[Real]) -> tuple[list[Real], list[Real]]:
        """χ₀ and χ₀' on another grid, using the same branches and match point."""
        assert self._outer is not None
        if self._inner is None or self.match_point is None:
            return self._outer.values(radii)
        inner = [r for r in radii if r <= self.match_point]
        outer = [r for r in radii if r > self.match_point]
        chi_in, dchi_in = self._inner.values(inner) if inner else ([], [])
        chi_out, dchi_out = self._outer.values(outer) if outer else ([], [])
        return chi_in + chi_out, dchi_in + dchi_out

    def nodes(self) -> int:
        signs = np.sign([float(chi) for chi in self.chi0[1:-1]])
        signs = signs[signs != 0]
        return int(np.count_nonzero(signs[1:] != signs[:-1]))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "r": [float(r) for r in self.grid],
                "chi0": [float(c) for c in self.chi0],
                "chi0_prime": [float(c) for c in self.chi0_prime],
            }
        )


def _action_midpoint(p: Problem, E: Real, a: Real, b: Real) -> float:
    """Radius where ∫_a^r k dr is half of ∫_a^b k dr (double precision)."""
    a_d, b_d, E_d = float(a), float(b), float(E)
    half = float(action_integral(p, E_d, a_d, b_d)) / 2
    lo, hi = bisect(lambda r: float(action_integral(p, E_d, a_d, r)) - half, a_d, b_d, rtol=1e-12)
    return (lo + hi) / 2


def _match_point(p: Problem, E: Real, a: Real, b: Real, c_b: int) -> float:
    """Branch crossing χ_a = χ_b inside (a, b) deepest in both Airy arguments (double precision).

    Among the crossings on the scan the one maximizing min(∫_a^r k, ∫_r^b k) is refined.
    """
    ev = p.evaluator(Precision.double)
    E_d, a_d, b_d = float(E), float(a), float(b)
    inner = _Branch(ev, E_d, a_d, -1, 1.0)
    outer = _Branch(ev, E_d, b_d, 1, float(c_b))

    def difference(r: float) -> float:
        return float(inner.at(r)[0] - outer.at(r)[0])

    radii = np.linspace(a_d, b_d, _MATCH_SCAN + 2)[1:-1]
    scan = [float(r) for r in radii]
    values = np.array(inner.values(scan)[0]) - np.array(outer.values(scan)[0])
    crossings = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
    if crossings.size == 0:
        raise MatchError(f"{p.name}: Langer branches do not cross in ({a_d:.8g}, {b_d:.8g}) at E={E_d:.12g}")
    centres = [float(r) for r in 0.5 * (radii[crossings] + radii[crossings + 1])]
    depth = np.minimum(
        np.array(cumulative_action(ev, E_d, a_d, centres), dtype=float),
        np.array(cumulative_action(ev, E_d, b_d, centres), dtype=float),
    )
    best = int(crossings[np.argmax(depth)])
    lo, hi = bisect(difference, float(radii[best]), float(radii[best + 1]), f_lo=values[best], rtol=1e-14)
    return (lo + hi) / 2


def langer_wavefunction(
    p: Problem,
    E: Real,
    state: StateSpec,
    grid: list[Real] | None = None,
    *,
    strict: bool = False,
    wkb: WkbSettings | None = None,
    solver: SolverSettings | None = None,
) -> LangerSeed:
    """Langer seed at energy E on `grid` (default: 2001 points up to the state's outer radius).

    Without a crossing of the two branches the action midpoint is used as the
    match point, unless `strict` asks for a MatchError.
    """
    wkb = wkb or WkbSettings()
    solver = solver or SolverSettings()
    precision = Precision.of(E)
    ev = p.evaluator(precision)
    turning = find_turning_points(
        p, E, KsqMode.langer, scan_points=wkb.scan_points, rtol=wkb.turning_point_rtol.get(precision)
    )
    a, b = turning.well
    if p.parity is Parity.zero_derivative_at_origin:
        a = turning.barrier_edge
    c_b = -1 if state.n_nodes % 2 else 1
    if grid is None:
        r_out = tail_radius(p, E, b, solver.tail_action)
        grid = [precision.scalar(float(r)) for r in np.linspace(float(ev.r_min), r_out, 2001)]

    outer = _Branch(ev, E, b, 1, precision.scalar(c_b))
    if a is None:
        chi, dchi = outer.values(grid)
        return LangerSeed(
            E=E, turning=turning, match_point=None, grid=grid, chi0=chi, chi0_prime=dchi,
            c_a=None, c_b=outer.constant, derivative_jump=0.0, _outer=outer,
        )

    try:
        r_match = precision.scalar(_match_point(p, E, a, b, c_b))
    except MatchError:
        if strict:
            raise
        r_match = precision.scalar(_action_midpoint(p, E, a, b))
        logging.warning(f"{p.name} {state.label}: no branch crossing, matching at the action midpoint")

    inner = _Branch(ev, E, a, -1, precision.scalar(1))
    chi_a, dchi_a = inner.at(r_match)
    chi_b, dchi_b = outer.at(r_match)
    # rescale the outer branch so the values agree exactly at the match point
    outer.constant = outer.constant * (chi_a / chi_b)
    dchi_b = dchi_b * (chi_a / chi_b)
    # measured against the local envelope k·√(χ² + (χ'/k)²), which does not vanish at an antinode
    k = xprec.sqrt(abs(ev.ksq(r_match, E, KsqMode.langer)))
    envelope = k * xprec.sqrt(chi_a * chi_a + (dchi_a / k) * (dchi_a / k))
    jump = float((dchi_a - dchi_b) / envelope)
    logging.debug(
        f"{p.name} {state.label}: match point r={float(r_match):.10g}, relative derivative jump {jump:.3g}"
    )
    seed = LangerSeed(
        E=E, turning=turning, match_point=r_match, grid=grid, chi0=[], chi0_prime=[],
        c_a=inner.constant, c_b=outer.constant, derivative_jump=jump, _inner=inner, _outer=outer,
    )
    seed.chi0, seed.chi0_prime = seed.evaluate(grid)
    return seed
