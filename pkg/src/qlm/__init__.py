from qlm.collocation import Tableau, gauss_tableau
from qlm.mesh import Mesh, build_mesh
from qlm.phase import (Direction, PhaseFunction, count_nodes, energy_update,
                       linearized_sweep, phase_iterate, phase_ode_rhs,
                       seed_phase)
from qlm.riccati import LogDerivative, RiccatiMethod, riccati_iterate
from qlm.solver import (QlmIterate, QlmRun, SolverOptions, Wavefunction,
                        reconstruct_wavefunction, solve_state)

__all__ = [
    "Direction",
    "LogDerivative",
    "Mesh",
    "PhaseFunction",
    "QlmIterate",
    "QlmRun",
    "RiccatiMethod",
    "SolverOptions",
    "Tableau",
    "Wavefunction",
    "build_mesh",
    "count_nodes",
    "energy_update",
    "gauss_tableau",
    "linearized_sweep",
    "phase_iterate",
    "phase_ode_rhs",
    "reconstruct_wavefunction",
    "riccati_iterate",
    "seed_phase",
    "solve_state",
]
