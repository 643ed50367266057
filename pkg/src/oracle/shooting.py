import math
from dataclasses import dataclass
from enum import StrEnum, auto

import numpy as np

import xprec
from oracle.gbs import gbs_step
from problems import KsqMode, Problem, StateSpec
from util.config_yml.settings import OracleSettings
from util.errors import StateNotFoundError
from util.logging import logging
from wkb import find_turning_points, tail_radius, wkb_energy
from xprec import Precision, Real
from xprec.roots import illinois


class Direction(StrEnum):
    outward = auto()
    inward = auto()


@dataclass(frozen=True)
class ShootingResult:
    E: Real
    mismatch: Real
    nodes: int


@dataclass(frozen=True)
class Domain:
    """Match and outer radius used for every trial energy of one search."""

    r_match: Real
    r_out: Real


@dataclass
class Trajectory:
    chi: Real
    dchi: Real
    nodes: int
    recorded: list[tuple[Real, Real, Real]]  # (r, χ, log scale)


def shooting_domain(p: Problem, state: StateSpec, precision: Precision, tail_action: float = 55.0) -> Domain:
    """Outer turning point and tail radius at the double-precision WKB estimate."""
    guess = wkb_energy(p, state, precision=Precision.double)
    turning = find_turning_points(p, guess, KsqMode.exact)
    b = turning.outer if turning.outer is not None else turning.well[1]
    r_out = tail_radius(p, guess, b, tail_action)
    return Domain(r_match=precision.scalar(float(b)), r_out=precision.scalar(r_out))


def _integrate(
    p: Problem,
    E: Real,
    start: Real,
    end: Real,
    chi: Real,
    dchi: Real,
    settings: OracleSettings,
    record: list[Real] | None = None,
) -> Trajectory:
    precision = Precision.of(E)
    ev = p.evaluator(precision)
    tol = settings.local_tol.get(precision)
    columns = settings.max_columns.get(precision)
    direction = 1 if end > start else -1
    targets = sorted(record or [], key=float, reverse=direction < 0)
    targets = [t for t in targets if (t - start) * direction >= 0 and (end - t) * direction >= 0]
    recorded: list[tuple[Real, Real, Real]] = []
    log_scale = precision.scalar(0)
    nodes = 0
    r = start

    def ksq(x: Real) -> Real:
        return ev.ksq(x, E, KsqMode.exact)

    while targets and targets[0] == r:
        recorded.append((r, chi, log_scale))
        targets.pop(0)
    proposed = math.inf
    steps = 0
    floor_rate = 8.0 / max(abs(float(end - start)), 1e-300)
    while (end - r) * direction > 0:
        local = math.sqrt(abs(float(ksq(r)))) + floor_rate
        h = min(proposed, 1.0 / local, abs(float(end - r)))
        stop = end
        if targets:
            h = min(h, abs(float(targets[0] - r)))
            stop = targets[0]
        H = precision.scalar(h * direction)
        landing = abs(float(stop - r)) <= h
        if landing:
            H = stop - r
        result = gbs_step(ksq, r, chi, dchi, H, scale=max(local, 1e-3), tol=tol, max_columns=columns)
        r = stop if landing and result.accepted == H else r + result.accepted
        if float(result.chi) * float(chi) < 0:
            nodes += 1
        chi, dchi = result.chi, result.dchi
        proposed = result.proposed
        steps += 1
        if steps % settings.renorm_every == 0:
            size = max(abs(float(chi)), abs(float(dchi)) / local)
            if size > 0:
                chi, dchi = chi / size, dchi / size
                log_scale = log_scale + xprec.log(precision.scalar(size))
        while targets and targets[0] == r:
            recorded.append((r, chi, log_scale))
            targets.pop(0)
    return Trajectory(chi=chi, dchi=dchi, nodes=nodes, recorded=recorded)


def _outward_start(p: Problem, E: Real) -> tuple[Real, Real]:
    ev = p.evaluator(Precision.of(E))
    y0 = ev.origin_log_derivative(E)
    one = ev.scalar(1)
    if y0 is None:
        return ev.scalar(0), one
    return one, y0


def _inward_start(p: Problem, E: Real, r_out: Real) -> tuple[Real, Real]:
    ev = p.evaluator(Precision.of(E))
    ksq = ev.ksq(r_out, E, KsqMode.exact)
    one = ev.scalar(1)
    return one, (-xprec.sqrt(-ksq) if ksq < 0 else ev.scalar(0))


def integrate_schrodinger(
    p: Problem,
    E: Real,
    direction: Direction,
    domain: Domain,
    *,
    settings: OracleSettings | None = None,
) -> tuple[Real, Real, int]:
    """χ, χ' at the match radius and the nodes crossed, from the regular origin or the decaying tail."""
    settings = settings or OracleSettings()
    ev = p.evaluator(Precision.of(E))
    if direction is Direction.outward:
        chi, dchi = _outward_start(p, E)
        trajectory = _integrate(p, E, ev.r_min, domain.r_match, chi, dchi, settings)
    else:
        chi, dchi = _inward_start(p, E, domain.r_out)
        trajectory = _integrate(p, E, domain.r_out, domain.r_match, chi, dchi, settings)
    return trajectory.chi, trajectory.dchi, trajectory.nodes


def shoot(p: Problem, E: Real, domain: Domain, settings: OracleSettings | None = None) -> ShootingResult:
    """Log-derivative mismatch at the match radius and node count of the outward solution."""
    settings = settings or OracleSettings()
    chi_out, dchi_out, nodes_out = integrate_schrodinger(p, E, Direction.outward, domain, settings=settings)
    chi_in, dchi_in, nodes_in = integrate_schrodinger(p, E, Direction.inward, domain, settings=settings)
    mismatch = dchi_out / chi_out - dchi_in / chi_in
    return ShootingResult(E=E, mismatch=mismatch, nodes=nodes_out + nodes_in)


def outward_nodes(p: Problem, E: float, domain: Domain, settings: OracleSettings) -> int:
    """Nodes of the regular solution on [r_min, r_out]; counts the levels below E."""
    ev = p.evaluator(Precision.double)
    chi, dchi = _outward_start(p, E)
    trajectory = _integrate(p, E, float(ev.r_min), float(domain.r_out), float(chi), float(dchi), settings)
    return trajectory.nodes


def exact_energy(
    p: Problem,
    state: StateSpec,
    tol: float | None = None,
    *,
    precision: Precision = Precision.extended,
    settings: OracleSettings | None = None,
    tail_action: float = 55.0,
) -> Real:
    """Eigenvalue by node-count bisection in double precision, polished by Illinois on the mismatch."""
    settings = settings or OracleSettings()
    if tol is None:
        tol = settings.energy_tol.get(precision)
    domain = shooting_domain(p, state, precision, tail_action)
    ev = p.evaluator(precision)
    e_lo, e_hi = ev.energy_window()
    n = state.n_nodes
    energies = np.linspace(e_lo, e_hi, settings.scan_points)

    def above(E: float) -> bool:
        return outward_nodes(p, E, domain, settings) > n

    index = next((i for i, E in enumerate(energies) if above(float(E))), None)
    if index is None or index == 0:
        raise StateNotFoundError(f"{p.name} {state.label}: no node-count bracket in [{e_lo:.8g}, {e_hi:.8g}]")
    lo, hi = float(energies[index - 1]), float(energies[index])
    while hi - lo > settings.bracket_rtol * max(abs(lo), abs(hi), 1e-300):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if above(mid):
            hi = mid
        else:
            lo = mid
    logging.debug(f"{p.name} {state.label}: oracle bracket [{lo:.15g}, {hi:.15g}]")

    def mismatch(E: Real) -> Real:
        return shoot(p, E, domain, settings).mismatch

    E = illinois(mismatch, precision.scalar(lo), precision.scalar(hi), rtol=tol)
    logging.info(f"{p.name} {state.label}: E_exact = {E:.25g}")
    return E


def wavefunction(
    p: Problem,
    E: Real,
    radii: list[Real],
    domain: Domain,
    *,
    settings: OracleSettings | None = None,
) -> list[Real]:
    """χ at `radii` (ascending), outward and inward solutions joined in value at the match radius."""
    settings = settings or OracleSettings()
    ev = p.evaluator(Precision.of(E))
    inside = [r for r in radii if r <= domain.r_match]
    outside = [r for r in radii if r > domain.r_match]
    chi, dchi = _outward_start(p, E)
    out = _integrate(p, E, ev.r_min, domain.r_match, chi, dchi, settings, record=[*inside, domain.r_match])
    chi, dchi = _inward_start(p, E, domain.r_out)
    back = _integrate(p, E, domain.r_out, domain.r_match, chi, dchi, settings, record=[*outside, domain.r_match])
    _, match_out, scale_out = out.recorded[-1]
    _, match_in, scale_in = back.recorded[-1]
    ratio = match_out / match_in
    values: list[Real] = []
    for _, chi_r, scale in out.recorded[:-1]:
        values.append(chi_r * xprec.exp(scale - scale_out))
    for _, chi_r, scale in reversed(back.recorded[:-1]):
        values.append(chi_r * xprec.exp(scale - scale_in) * ratio)
    if len(values) != len(radii):
        raise StateNotFoundError(f"{p.name}: recorded {len(values)} of {len(radii)} wavefunction points")
    return values
