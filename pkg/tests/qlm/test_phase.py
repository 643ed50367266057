import math
from decimal import Decimal

import numpy as np
import pytest

from problems import Problem
from problems.potentials import Custom
from qlm import (LogDerivative, PhaseFunction, RiccatiMethod, build_mesh,
                 count_nodes, gauss_tableau, phase_iterate, phase_ode_rhs,
                 riccati_iterate, seed_phase)
from qlm.phase import interpolate
from util.errors import DomainError
from xprec import Precision

FLAT = Problem(name="flat", potential=Custom(expression="5"), r_max=Decimal(4))
E = 0.5  # k² = 2(E − 5) = −9 everywhere
KAPPA = 3.0


def _mesh(level: int = 0):
    ev = FLAT.evaluator(Precision.double)
    return build_mesh(
        ev, E, KAPPA, 2.0, 4.0, gauss_tableau(4, Precision.double), phase_step=0.25, tail_step=0.25, level=level
    )


def test_mesh_layout():
    mesh = _mesh()
    assert mesh.nodes[0] == FLAT.evaluator(Precision.double).r_min
    assert mesh.match_point == 2.0 and mesh.nodes[-1] == 4.0
    assert len(mesh.points) == mesh.steps * (mesh.stages + 1) + 1
    for i in range(mesh.steps):
        assert mesh.points[mesh.node_index(i)] == mesh.nodes[i]
        assert all(mesh.nodes[i] < mesh.points[q] < mesh.nodes[i + 1] for q in mesh.stage_indices(i))
    finer = _mesh(level=1)
    assert finer.steps > mesh.steps


def test_count_nodes():
    assert count_nodes([0.0, -1.0, -3.5, -6.5, -7.0]) == 2
    assert count_nodes([-0.5, -1.5, -1.0]) == 0
    assert count_nodes([0.2, -0.1, -3.3]) == 1


def test_seed_phase_of_a_sine():
    radii = np.linspace(0.0, 10.0, 401)
    u = seed_phase(list(np.sin(radii)), list(np.cos(radii)), 1.0)
    np.testing.assert_allclose(u, -radii, atol=1e-12)
    assert count_nodes(u) == 3


def test_phase_rhs_vanishes_on_the_decaying_branch():
    assert phase_ode_rhs(-0.75 * math.pi, 1.0, FLAT, E, KAPPA) == pytest.approx(0.0, abs=1e-14)


def test_decaying_branch_is_a_fixed_point_of_the_phase_iteration():
    mesh = _mesh()
    u0 = PhaseFunction(kappa=KAPPA, mesh=mesh, u=[-0.75 * math.pi] * len(mesh.points))
    u1 = phase_iterate(u0, FLAT, E, n_nodes=0)
    np.testing.assert_allclose(u1.u, u0.u, atol=1e-12)
    assert u1.nodes() == 0


def test_log_derivative_and_phase_forms_agree():
    mesh = _mesh()
    u = PhaseFunction(kappa=KAPPA, mesh=mesh, u=[-0.75 * math.pi] * len(mesh.points))
    y = LogDerivative.from_phase(u)
    np.testing.assert_allclose(y.y, -3.0, rtol=1e-14)
    np.testing.assert_allclose(y.to_phase(KAPPA), math.pi / 4, rtol=1e-14)
    with pytest.raises(DomainError):
        LogDerivative.from_phase(PhaseFunction(kappa=KAPPA, mesh=mesh, u=[0.0] * len(mesh.points)))


def _at_nodes(y):
    return [y.y[y.mesh.node_index(i)] for i in range(len(y.mesh.nodes))]


def test_quadrature_first_iterate_is_the_closed_form():
    mesh = _mesh()
    y1 = riccati_iterate(LogDerivative.constant(mesh, -2.0), FLAT, E, method=RiccatiMethod.quadrature)
    # (y₀² − k²)/(2y₀) with y₀ = −2, k² = −9
    np.testing.assert_allclose(_at_nodes(y1), -3.25, rtol=1e-12)


@pytest.mark.parametrize("method", list(RiccatiMethod))
def test_riccati_iteration_converges_quadratically(method):
    mesh = _mesh()
    y = LogDerivative.constant(mesh, -2.0)
    errors = []
    for _ in range(6):
        y = riccati_iterate(y, FLAT, E, method=method)
        errors.append(max(abs(v + 3.0) for v in _at_nodes(y)))
    assert errors[-1] < 1e-12
    assert errors[2] < errors[1] ** 1.5


def test_both_riccati_paths_share_the_fixed_point():
    mesh = _mesh()
    y = LogDerivative.constant(mesh, -3.0)
    ode = riccati_iterate(y, FLAT, E, method=RiccatiMethod.ode)
    quadrature = riccati_iterate(y, FLAT, E, method=RiccatiMethod.quadrature)
    np.testing.assert_allclose(ode.y, -3.0, rtol=1e-14)
    np.testing.assert_allclose(_at_nodes(quadrature), _at_nodes(ode), atol=1e-12)


def test_riccati_needs_a_nonzero_log_derivative():
    mesh = _mesh()
    with pytest.raises(DomainError):
        riccati_iterate(LogDerivative.constant(mesh, 0.0), FLAT, E)


def test_interpolation_onto_a_finer_mesh_is_exact_for_smooth_phases():
    mesh, finer = _mesh(), _mesh(level=1)
    phase = PhaseFunction(kappa=KAPPA, mesh=mesh, u=[-0.1 * float(r) for r in mesh.points])
    moved = interpolate(phase, finer)
    np.testing.assert_allclose(moved.u, [-0.1 * float(r) for r in finer.points], atol=1e-13)
