import math

import numpy as np
import pytest
from scipy.integrate import quad

import xprec
from problems import KsqMode, resolve
from util.errors import IntegrandDomainError
from wkb import Region, action_integral, cumulative_action, find_turning_points, tail_radius
from xprec import ExtScalar, Precision


def _quad(f, a, b) -> float:
    value, _ = quad(f, float(a), float(b), limit=200, epsabs=1e-13, epsrel=1e-12)
    return value


def test_quarter_circle_in_extended_precision(harmonic_ground):
    p, _ = harmonic_ground
    E = ExtScalar.from_string("0.5")
    action = action_integral(p, E, ExtScalar(0), ExtScalar(1))
    assert abs(float(action - xprec.pi(Precision.extended) / 4)) < 1e-26


def test_allowed_action_matches_scipy():
    p, _ = resolve("anharmonic5", "2s")
    E = 6.6
    a, b = find_turning_points(p, E).well
    ev = p.evaluator(Precision.double)
    reference = _quad(lambda r: math.sqrt(max(ev.ksq(r, E, KsqMode.langer), 0.0)), a, b)
    assert float(action_integral(p, E, a, b)) == pytest.approx(reference, rel=1e-8)


def test_forbidden_action_under_the_double_well_barrier():
    p, _ = resolve("doublewell", "1s+")
    E = 0.45
    edge = find_turning_points(p, E).barrier_edge
    ev = p.evaluator(Precision.double)
    reference = _quad(lambda r: math.sqrt(max(-ev.ksq(r, E, KsqMode.langer), 0.0)), 0.0, edge)
    assert float(action_integral(p, E, 0.0, edge, Region.forbidden)) == pytest.approx(reference, rel=1e-8)


def test_wrong_region_is_rejected(harmonic_ground):
    p, _ = harmonic_ground
    with pytest.raises(IntegrandDomainError):
        action_integral(p, 0.5, 0.0, 1.0, Region.forbidden)


def test_empty_interval(harmonic_ground):
    p, _ = harmonic_ground
    assert action_integral(p, 0.5, 1.0, 0.5) == 0


def test_cumulative_action_on_both_sides_of_the_turning_point(harmonic_ground):
    p, _ = harmonic_ground
    ev = p.evaluator(Precision.double)
    radii = [float(r) for r in np.linspace(0.0, 3.0, 301)]
    actions = cumulative_action(ev, 0.5, 1.0, radii)
    for r, s in zip(radii, actions):
        if r < 1:
            expected = 0.5 * (math.pi / 2 - r * math.sqrt(1 - r * r) - math.asin(r))
        else:
            root = math.sqrt(r * r - 1)
            expected = 0.5 * (r * root - math.log(r + root))
        assert s == pytest.approx(expected, abs=1e-10)


def test_tail_radius(harmonic_ground):
    p, _ = harmonic_ground
    r = tail_radius(p, 0.5, 1.0, 20.0)
    # ∫_1^r √(r² − 1) dr = 20
    root = math.sqrt(r * r - 1)
    assert 0.5 * (r * root - math.log(r + root)) == pytest.approx(20.0, rel=2e-2)
    assert tail_radius(p, 0.5, 1.0, 1e6) == float(p.r_max)
