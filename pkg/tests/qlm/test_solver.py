import math

import numpy as np
import pytest

from problems import resolve
from qlm import SolverOptions, solve_state
from qlm.solver import _iterate, digits, iterate_wavefunction, normalize, seed_wavefunction
from util.config_yml.settings import SolverSettings
from util.errors import ConvergenceError
from xprec import Precision

DOUBLE = SolverOptions(precision=Precision.double)
ANHARMONIC_1S = "2.04457965744735563536"


@pytest.mark.parametrize("state, energy", [("n=0", 0.5), ("n=1", 1.5), ("n=2", 2.5), ("n=5", 5.5)])
def test_harmonic_levels(state, energy):
    run = solve_state(*resolve("harmonic", state), DOUBLE)
    assert run.converged
    assert float(run.energy) == pytest.approx(energy, rel=1e-11)
    assert run.phase.nodes() == run.state.n_nodes


def test_harmonic_ground_state_wavefunction(harmonic_ground):
    p, state = harmonic_ground
    run = solve_state(p, state, DOUBLE)
    wave = iterate_wavefunction(run, p)
    radii = np.array([float(r) for r in wave.radii])
    np.testing.assert_allclose([float(c) for c in wave.chi], np.exp(-(radii**2) / 2), atol=1e-8)


def test_anharmonic_ground_state(anharmonic_ground):
    run = solve_state(*anharmonic_ground, DOUBLE)
    exact = float(ANHARMONIC_1S)
    assert float(run.energy) == pytest.approx(exact, rel=1e-10)
    assert abs(float(run.first_iterate_energy) - exact) < abs(float(run.e_wkb) - exact)
    assert float(run.first_iterate_energy) == pytest.approx(exact, rel=1e-3)
    assert 2 <= run.K <= 10


def test_iterates_converge_quadratically(anharmonic_ground):
    run = solve_state(*anharmonic_ground, DOUBLE)
    errors = run.to_frame()["abs_error"].tolist()
    assert errors[1] < 1e-2 * errors[0]
    # digits roughly double until the floor
    assert errors[2] < max(10 * errors[1] ** 1.5, 1e-13)


def test_run_frame(harmonic_ground):
    df = solve_state(*harmonic_ground, DOUBLE).to_frame()
    assert list(df.columns) == ["iteration", "E", "abs_error", "defect"]
    assert df["iteration"].tolist() == list(range(1, len(df) + 1))
    assert df["abs_error"].iloc[-1] < 1e-11


def test_iteration_cap_raises_with_history(anharmonic_ground):
    opts = SolverOptions(precision=Precision.double, solver=SolverSettings(max_iter=1))
    with pytest.raises(ConvergenceError) as info:
        solve_state(*anharmonic_ground, opts)
    assert len(info.value.history) == 1


def test_seed_wavefunction_is_normalized(anharmonic_ground):
    run = solve_state(*anharmonic_ground, DOUBLE)
    wave = seed_wavefunction(run)
    chi = [float(c) for c in wave.chi]
    assert max(abs(c) for c in chi) == pytest.approx(1.0)
    assert max(chi) == pytest.approx(1.0)


def test_normalize_flips_to_positive_first_lobe():
    chi = normalize([0.0, -0.5, -1.0, -0.5, 0.0, 2.0, 4.0, 2.0, 0.0])
    assert chi[2] == pytest.approx(0.25)
    assert chi[6] == pytest.approx(-1.0)


def test_normalize_takes_the_sign_from_an_antinode_at_the_boundary():
    chi = normalize([-1.0, -0.8, -0.3, 0.0])
    assert chi == pytest.approx([1.0, 0.8, 0.3, 0.0])


def test_even_state_reconstruction_is_positive_at_the_origin(harmonic_ground):
    p, state = harmonic_ground
    run = solve_state(p, state, DOUBLE)
    for index in (0, -1):
        wave = iterate_wavefunction(run, p, index)
        assert float(wave.chi[0]) == pytest.approx(1.0, rel=1e-2)


def test_iteration_recovers_from_a_distant_energy():
    p, state = resolve("harmonic", "n=1")
    run = solve_state(p, state, DOUBLE)
    history, converged = _iterate(p, state, 4.0, run.phase, DOUBLE)
    assert converged
    assert float(history[-1].E) == pytest.approx(1.5, rel=1e-11)
    assert history[-1].phase.nodes() == 0


def test_near_threshold_state_with_a_poor_wkb_seed():
    p, state = resolve("woodsaxon", "3s")
    run = solve_state(p, state, DOUBLE)
    assert float(run.e_wkb) == pytest.approx(-0.029269, abs=1.5e-6)
    assert float(run.energy) == pytest.approx(-0.10819568493119384933, rel=1e-10)
    assert run.phase.nodes() == 2


def test_digits():
    assert digits(2.0445, 2.0446) == pytest.approx(-math.log10(1e-4 / 2.0446))
    assert digits(1.0, 1.0) == math.inf


@pytest.mark.slow
@pytest.mark.parametrize(
    "problem, state, exact",
    [
        ("anharmonic5", "1s", ANHARMONIC_1S),
        ("log", "1s", "1.04433226746060809380"),
        ("woodsaxon", "1s", "-17.5597967410317970589"),
    ],
)
def test_extended_precision_energies(problem, state, exact):
    run = solve_state(*resolve(problem, state), SolverOptions(precision=Precision.extended))
    assert digits(run.energy, Precision.extended.scalar(exact)) > 18


def test_energy_does_not_depend_on_the_phase_scale(anharmonic_ground):
    base = solve_state(*anharmonic_ground, DOUBLE)
    doubled = solve_state(*anharmonic_ground, SolverOptions(precision=Precision.double, kappa_factor=2.0))
    assert float(doubled.energy) == pytest.approx(float(base.energy), rel=1e-11)
    assert doubled.phase.nodes() == base.phase.nodes() == 0
