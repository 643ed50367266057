"""Quasilinearization of the Riccati equation y' + y² + k² = 0 for y = χ'/χ.

Only usable where χ has no node; the production path iterates the phase instead.
"""

from dataclasses import dataclass
from enum import StrEnum, auto

import xprec
from problems import KsqMode, Problem
from qlm.collocation import collocation_step, quadrature_step
from qlm.mesh import Mesh
from qlm.phase import PhaseFunction
from util.errors import DomainError
from xprec import Precision, Real


class RiccatiMethod(StrEnum):
    ode = auto()
    quadrature = auto()


@dataclass
class LogDerivative:
    """y on every collocation point of `mesh`."""

    mesh: Mesh
    y: list[Real]

    @property
    def grid(self) -> list[Real]:
        return self.mesh.nodes

    @classmethod
    def constant(cls, mesh: Mesh, value: Real) -> "LogDerivative":
        return cls(mesh=mesh, y=[value] * len(mesh.points))

    @classmethod
    def from_phase(cls, phase: PhaseFunction) -> "LogDerivative":
        """y = −κ cot u."""
        values = []
        for u in phase.u:
            s, c = xprec.sincos(u)
            if float(s) == 0.0:
                raise DomainError("phase crosses a node of χ; y = χ'/χ is undefined there")
            values.append(-phase.kappa * c / s)
        return cls(mesh=phase.mesh, y=values)

    def to_phase(self, kappa: Real) -> list[Real]:
        """u = arctan(−κ/y), on the branch (−π/2, π/2)."""
        return [xprec.atan(-kappa / y) for y in self.y]


def riccati_iterate(
    y_prev: LogDerivative,
    p: Problem,
    E: Real,
    *,
    method: RiccatiMethod = RiccatiMethod.ode,
) -> LogDerivative:
    """y_p' = y_{p−1}² − 2 y_p y_{p−1} − k², integrated inward from the outer end of the mesh.

    The ode method starts from the decaying branch y_p = −√(−k²); the quadrature
    method evaluates the closed-form solution started from y_p = (y_{p−1}² − k²)/(2y_{p−1}).
    """
    mesh = y_prev.mesh
    ev = p.evaluator(Precision.of(E))
    ksq = [ev.ksq(r, E, KsqMode.exact) for r in mesh.points]
    if any(float(y) == 0.0 for y in y_prev.y):
        raise DomainError("previous log-derivative vanishes on the mesh")
    # y_{p-1}² − k², the source of the linear equation
    source = [y * y - k2 for y, k2 in zip(y_prev.y, ksq)]
    values: list[Real] = [E * 0] * len(mesh.points)
    if method is RiccatiMethod.ode:
        if ksq[-1] >= 0:
            raise DomainError(f"outer end r={float(mesh.nodes[-1]):.6g} is not classically forbidden")
        y = -xprec.sqrt(-ksq[-1])
        values[-1] = y
        coefficient = [-2 * yp for yp in y_prev.y]
        for i in range(mesh.steps - 1, -1, -1):
            stages = list(mesh.stage_indices(i))[::-1]
            h = mesh.nodes[i] - mesh.nodes[i + 1]
            stage_values, (y,) = collocation_step(
                mesh.tableau, h, [y], [coefficient[q] for q in stages], [[source[q] for q in stages]]
            )
            for q, (value,) in zip(stages, stage_values):
                values[q] = value
            values[mesh.node_index(i)] = y
        return LogDerivative(mesh=mesh, y=values)

    # y(z) = e^{−2Φ(z)} [y(z₀) + ∫_{z₀}^z e^{2Φ} g],  Φ(z) = ∫_{z₀}^z y_{p−1}, carried as J = e^{−2Φ}∫e^{2Φ}g
    y0 = source[-1] / (2 * y_prev.y[-1])
    values[-1] = y0
    phi = E * 0
    carried = E * 0
    for i in range(mesh.steps - 1, -1, -1):
        stages = list(mesh.stage_indices(i))[::-1]
        h = mesh.nodes[i] - mesh.nodes[i + 1]
        stage_phi, end_phi = quadrature_step(mesh.tableau, h, phi, [y_prev.y[q] for q in stages])
        tableau = mesh.tableau
        for j, q in enumerate(stages):
            acc = xprec.exp(-2 * (stage_phi[j] - phi)) * carried
            for m, q_m in enumerate(stages):
                acc = acc + h * tableau.a[j][m] * xprec.exp(2 * (stage_phi[m] - stage_phi[j])) * source[q_m]
            values[q] = acc + y0 * xprec.exp(-2 * stage_phi[j])
        acc = xprec.exp(-2 * (end_phi - phi)) * carried
        for m, q_m in enumerate(stages):
            acc = acc + h * tableau.b[m] * xprec.exp(2 * (stage_phi[m] - end_phi)) * source[q_m]
        carried, phi = acc, end_phi
        values[mesh.node_index(i)] = carried + y0 * xprec.exp(-2 * phi)
    return LogDerivative(mesh=mesh, y=values)
