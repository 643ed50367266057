import math

import numpy as np

import xprec
from problems import KsqMode, Parity, Problem, StateSpec
from util.config_yml.settings import WkbSettings
from util.errors import NoBoundStateError, StateNotFoundError
from util.logging import logging
from wkb.action import Region, action_integral
from wkb.turning_points import TurningPoints, find_turning_points
from xprec import Precision, Real
from xprec.roots import illinois


def _turning_points(p: Problem, E: Real, settings: WkbSettings) -> TurningPoints | None:
    precision = Precision.of(E)
    try:
        return find_turning_points(
            p,
            E,
            KsqMode.langer,
            scan_points=settings.scan_points,
            rtol=settings.turning_point_rtol.get(precision),
        )
    except NoBoundStateError:
        return None


def quantization_residual(
    p: Problem,
    state: StateSpec,
    E: Real,
    *,
    with_tunneling: bool,
    settings: WkbSettings | None = None,
) -> Real:
    """F(E) = ∫_a^b k dr − (n+½)π [+ ½e^{−∫K}], increasing in E; +inf once the state is unbound."""
    settings = settings or WkbSettings()
    precision = Precision.of(E)
    pi = xprec.pi(precision)
    n = state.n_nodes
    tp = _turning_points(p, E, settings)
    if tp is None:
        # k² single-signed: either nothing is allowed yet, or everything is
        ev = p.evaluator(Precision.double)
        allowed = ev.ksq(float(ev.r_max), float(E), KsqMode.langer) > 0
        return precision.scalar(math.inf) if allowed else -(n + precision.scalar(1) / 2) * pi
    b = tp.outer
    if b is None:
        return precision.scalar(math.inf)
    a, _ = tp.well
    if p.parity is Parity.zero_derivative_at_origin:
        edge = tp.barrier_edge
        if edge is None:
            # single well through the origin: half of the full-line condition
            action = action_integral(p, E, precision.scalar(0), b)
            return action - (n + precision.scalar(1) / 4) * pi
        residual = action_integral(p, E, edge, b) - (n + precision.scalar(1) / 2) * pi
        if with_tunneling:
            # half barrier: the forbidden action from the origin to the well edge
            barrier = action_integral(p, E, precision.scalar(0), edge, Region.forbidden)
            residual = residual + xprec.exp(-barrier) / 2
        return residual
    lo = a if a is not None else p.evaluator(precision).r_min
    return action_integral(p, E, lo, b) - (n + precision.scalar(1) / 2) * pi


def wkb_energy(
    p: Problem,
    state: StateSpec,
    with_tunneling: bool | None = None,
    *,
    precision: Precision = Precision.extended,
    settings: WkbSettings | None = None,
) -> Real:
    """Root of the WKB quantization residual (Langer k²).

    The tunneling term defaults to on for states with zero derivative at the origin.
    """
    settings = settings or WkbSettings()
    if with_tunneling is None:
        with_tunneling = p.parity is Parity.zero_derivative_at_origin
    ev = p.evaluator(precision)
    e_lo, e_hi = ev.energy_window()
    energies = np.linspace(e_lo, e_hi, settings.energy_scan)

    def residual(E: Real) -> Real:
        return quantization_residual(p, state, E, with_tunneling=with_tunneling, settings=settings)

    def residual_double(index: int) -> float:
        return float(residual(float(energies[index])))

    # F is increasing in E, so the first scan point with F >= 0 is found by bisection over the index
    lo_index, hi_index = 0, len(energies) - 1
    if residual_double(hi_index) < 0:
        raise StateNotFoundError(
            f"{p.name} {state.label}: WKB residual negative over the whole window "
            f"[{e_lo:.8g}, {e_hi:.8g}]"
        )
    if residual_double(lo_index) >= 0:
        raise StateNotFoundError(
            f"{p.name} {state.label}: WKB residual already non-negative at the window bottom {e_lo:.8g}"
        )
    while hi_index - lo_index > 1:
        middle = (lo_index + hi_index) // 2
        if residual_double(middle) >= 0:
            hi_index = middle
        else:
            lo_index = middle
    lo, hi = float(energies[lo_index]), float(energies[hi_index])
    logging.debug(f"{p.name} {state.label}: WKB bracket [{lo:.12g}, {hi:.12g}]")

    f_hi = residual(hi)
    for _ in range(80):
        if math.isfinite(float(f_hi)):
            break
        middle_energy = (lo + hi) / 2
        f_mid = residual(middle_energy)
        if f_mid < 0:
            lo = middle_energy
        else:
            hi, f_hi = middle_energy, f_mid
    else:
        raise StateNotFoundError(f"{p.name} {state.label}: state unbound at the top of its bracket")

    E = illinois(
        residual,
        precision.scalar(lo),
        precision.scalar(hi),
        rtol=settings.quantization_tol.get(precision),
        atol=settings.quantization_tol.get(precision) * 1e-3,
    )
    logging.info(f"{p.name} {state.label}: E_WKB = {float(E):.15g}")
    return E
