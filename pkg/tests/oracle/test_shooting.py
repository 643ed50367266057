import numpy as np
import pytest

import xprec
from oracle import Direction, exact_energy, integrate_schrodinger, shoot, shooting_domain, wavefunction
from problems import resolve
from qlm.solver import normalize
from util.config_yml.settings import OracleSettings
from util.errors import NoBoundStateError, StateNotFoundError
from xprec import Precision

DOUBLE = Precision.double


@pytest.mark.parametrize("state, energy", [("n=0", 0.5), ("n=1", 1.5), ("n=4", 4.5)])
def test_harmonic_levels(state, energy):
    E = exact_energy(*resolve("harmonic", state), precision=DOUBLE)
    assert float(E) == pytest.approx(energy, rel=1e-11)
    assert abs(float(E) - energy) < 1e-12 * energy


def test_anharmonic_ground_state(anharmonic_ground):
    E = exact_energy(*anharmonic_ground, precision=DOUBLE)
    assert float(E) == pytest.approx(2.04457965744735563536, rel=1e-10)


def test_domain_brackets_the_well(harmonic_ground):
    domain = shooting_domain(*harmonic_ground, DOUBLE)
    assert float(domain.r_match) == pytest.approx(1.0, rel=1e-10)
    assert 8.0 < float(domain.r_out) < 14.0


def test_mismatch_changes_sign_at_the_eigenvalue(harmonic_ground):
    p, state = harmonic_ground
    domain = shooting_domain(p, state, DOUBLE)
    below, above = shoot(p, 0.49, domain), shoot(p, 0.51, domain)
    assert float(below.mismatch) * float(above.mismatch) < 0
    assert below.nodes == above.nodes == 0


def test_outward_solution_counts_nodes():
    p, state = resolve("anharmonic5", "3s")
    domain = shooting_domain(p, state, DOUBLE)
    _, _, nodes = integrate_schrodinger(p, 12.7678665411805352289, Direction.outward, domain)
    assert nodes == 2


def test_wavefunction_matches_the_gaussian(harmonic_ground):
    p, state = harmonic_ground
    domain = shooting_domain(p, state, DOUBLE)
    radii = [0.03 + 0.1 * k for k in range(40)]
    chi = normalize(wavefunction(p, 0.5, radii, domain))
    expected = np.exp(-np.square(radii) / 2)
    np.testing.assert_allclose([float(c) for c in chi], expected / expected[0], atol=1e-9)


def test_missing_state_raises():
    p, state = resolve("woodsaxon", "6s")
    with pytest.raises((StateNotFoundError, NoBoundStateError)):
        exact_energy(p, state, precision=DOUBLE)


@pytest.mark.slow
def test_anharmonic_ground_state_in_extended(anharmonic_ground):
    E = exact_energy(*anharmonic_ground)
    assert abs(float(E - Precision.extended.scalar("2.04457965744735563536"))) < 1e-18 * float(E)


@pytest.mark.slow
def test_extended_wavefunction_keeps_full_precision_through_rescaling(harmonic_ground):
    p, state = harmonic_ground
    ext = Precision.extended
    domain = shooting_domain(p, state, ext)
    settings = OracleSettings(renorm_every=2)
    radii = [ext.scalar("0.25") * k for k in range(1, 24)]
    chi = wavefunction(p, ext.scalar("0.5"), radii, domain, settings=settings)
    for r, value in zip(radii, chi):
        expected = xprec.exp((radii[0] * radii[0] - r * r) / 2)
        assert abs(float(value / chi[0] - expected)) < 1e-22 * float(expected)


@pytest.mark.parametrize(
    "state, published",
    [("(1,0,0,0)", "0.99999334014853888016"), ("(2,0,0,0)", "0.99999833502466540223")],
)
def test_breit_coulomb_levels(state, published):
    E = exact_energy(*resolve("breitcoulomb", state), precision=DOUBLE)
    assert float(E) == pytest.approx(float(published), rel=1e-8)
    # binding α²/(8ν²)·(1 − 3α²/(16ν²)) with ν = N + L
    alpha2 = (1 / 137) ** 2
    nu2 = int(state[1]) ** 2
    binding = alpha2 / (8 * nu2) * (1 - 3 * alpha2 / (16 * nu2))
    assert 1 - float(E) == pytest.approx(binding, rel=1e-4)
