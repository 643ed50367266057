import math
from dataclasses import dataclass, field

import pandas as pd
from pydantic import BaseModel, ConfigDict

import xprec
from problems import KsqMode, Problem, StateSpec
from qlm.collocation import gauss_tableau, quadrature_step
from qlm.mesh import Mesh, build_mesh
from qlm.phase import (PhaseCoefficients, PhaseFunction, boundary_values,
                       count_nodes, defect, energy_update, interpolate,
                       linearized_sweep, log_amplitude_rate, seed_phase)
from util.config_yml.settings import SolverSettings, WkbSettings
from util.errors import BracketResetError, ConvergenceError
from util.logging import logging
from wkb import (LangerSeed, find_turning_points, langer_wavefunction,
                 tail_radius, wkb_energy)
from xprec import Precision, Real

_MAX_HALVINGS = 8


class SolverOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    precision: Precision = Precision.extended
    solver: SolverSettings = SolverSettings()
    wkb: WkbSettings = WkbSettings()
    with_tunneling: bool | None = None
    kappa_factor: float = 1.0
    refine: bool = True


@dataclass
class QlmIterate:
    index: int
    E: Real
    defect: float
    phase: PhaseFunction = field(repr=False)


@dataclass
class QlmRun:
    problem: str
    state: StateSpec
    e_wkb: Real
    iterates: list[QlmIterate]
    converged: bool
    energy: Real
    seed: LangerSeed = field(repr=False)
    mesh_level: int = 0

    @property
    def K(self) -> int:
        return len(self.iterates)

    @property
    def first_iterate_energy(self) -> Real:
        return self.iterates[0].E

    @property
    def phase(self) -> PhaseFunction:
        return self.iterates[-1].phase

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "iteration": [it.index for it in self.iterates],
                "E": [it.E for it in self.iterates],
                "abs_error": [abs(float(it.E - self.energy)) for it in self.iterates],
                "defect": [it.defect for it in self.iterates],
            }
        )


@dataclass
class Wavefunction:
    radii: list[Real]
    chi: list[Real]
    kappa: Real

    @property
    def x(self) -> list[Real]:
        return [self.kappa * r for r in self.radii]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"r": [float(r) for r in self.radii], "x": [float(x) for x in self.x], "chi": [float(c) for c in self.chi]}
        )


def normalize(chi: list[Real]) -> list[Real]:
    """Scale to max|χ| = 1 with χ > 0 at the first antinode, boundary samples included."""
    magnitudes = [abs(float(c)) for c in chi]
    peak = max(magnitudes)
    if peak == 0.0:
        return chi
    threshold = 1e-3 * peak
    sign = 1
    last = len(chi) - 1
    for i, magnitude in enumerate(magnitudes):
        if magnitude < threshold:
            continue
        if (i == 0 or magnitude >= magnitudes[i - 1]) and (i == last or magnitude >= magnitudes[i + 1]):
            sign = 1 if float(chi[i]) > 0 else -1
            break
    scale = chi[magnitudes.index(peak)]
    scale = abs(scale) * sign
    return [c / scale for c in chi]


def reconstruct_wavefunction(u: PhaseFunction, p: Problem, E: Real) -> Wavefunction:
    """χ = R sin u with (log R)' = −½ ∂f/∂u integrated by the mesh's collocation weights."""
    mesh = u.mesh
    ev = p.evaluator(Precision.of(E))
    ksq = PhaseCoefficients(ev, mesh).ksq(E)
    rate = [log_amplitude_rate(phase, k2, u.kappa) for phase, k2 in zip(u.u, ksq)]
    log_r: list[Real] = [E * 0] * len(mesh.points)
    current = E * 0
    for i in range(mesh.steps):
        stages = list(mesh.stage_indices(i))
        h = mesh.nodes[i + 1] - mesh.nodes[i]
        stage_values, current = quadrature_step(mesh.tableau, h, current, [rate[q] for q in stages])
        for q, value in zip(stages, stage_values):
            log_r[q] = value
        log_r[mesh.node_index(i + 1)] = current
    top = max(log_r, key=float)
    chi = [xprec.exp(lr - top) * xprec.sin(phase) for lr, phase in zip(log_r, u.u)]
    return Wavefunction(radii=list(mesh.points), chi=normalize(chi), kappa=u.kappa)


def _settle_energy(
    p: Problem,
    state: StateSpec,
    E: Real,
    u: PhaseFunction,
    coefficients: PhaseCoefficients,
    opts: SolverOptions,
) -> tuple[list[Real], Real]:
    """Eigenvalue of one linearized phase equation around `u`.

    Newton steps on the match-point mismatch, each kept inside the energy bracket
    built from node counts; a step that cannot reach the state falls back to
    bisection of that bracket.
    """
    precision = opts.precision
    settings = opts.solver
    ev = coefficients.ev
    mesh = u.mesh
    energy_tol = settings.energy_tol.get(precision)
    n = state.n_nodes
    lo, hi = (precision.scalar(bound) for bound in ev.energy_window())
    trial = E
    previous: tuple[Real, Real] | None = None
    nodes = -1
    for _ in range(settings.max_energy_steps):
        origin, outer = boundary_values(ev, trial, u.kappa, mesh.nodes[-1], n)
        sweep = linearized_sweep(u, trial, coefficients, origin, outer)
        delta = energy_update(sweep, previous, trial)
        previous = (trial, sweep.mismatch)
        for _ in range(_MAX_HALVINGS + 1):
            target = trial + delta
            if lo < target < hi:
                candidate = sweep.combine(delta)
                nodes = count_nodes(candidate)
                if nodes == n:
                    break
                # more nodes than the state means the energy is too high
                if nodes > n:
                    hi = target
                else:
                    lo = target
            delta = delta / 2
        else:
            trial = (lo + hi) / 2
            previous = None
            logging.debug(
                f"{p.name} {state.label}: {nodes} nodes, bisecting the bracket "
                f"[{float(lo):.12g}, {float(hi):.12g}]"
            )
            continue
        if abs(float(delta)) <= energy_tol * abs(float(target)):
            return candidate, target
        trial = target
    raise BracketResetError(
        f"{p.name} {state.label}: linearized eigenvalue not settled in {settings.max_energy_steps} steps "
        f"(last node count {nodes}, bracket [{float(lo):.12g}, {float(hi):.12g}])",
        nodes=nodes,
        expected=n,
    )


def _iterate(
    p: Problem,
    state: StateSpec,
    E: Real,
    u: PhaseFunction,
    opts: SolverOptions,
) -> tuple[list[QlmIterate], bool]:
    """Quasilinear phase iterates, each at the eigenvalue of its own linearized equation."""
    precision = opts.precision
    settings = opts.solver
    ev = p.evaluator(precision)
    coefficients = PhaseCoefficients(ev, u.mesh)
    energy_tol = settings.energy_tol.get(precision)
    defect_tol = settings.defect_tol.get(precision)
    history: list[QlmIterate] = []
    for index in range(1, settings.max_iter + 1):
        candidate, E_new = _settle_energy(p, state, E, u, coefficients, opts)
        u_new = PhaseFunction(kappa=u.kappa, mesh=u.mesh, u=candidate)
        change = defect(u_new, u)
        delta = E_new - E
        history.append(QlmIterate(index=index, E=E_new, defect=change, phase=u_new))
        logging.debug(
            f"{p.name} {state.label}: iterate {index} E={E_new:.25g} δE={float(delta):.3g} defect={change:.3g}"
        )
        E, u = E_new, u_new
        if abs(float(delta)) <= energy_tol * abs(float(E)) and change <= defect_tol:
            return history, True
    return history, False


def _mesh(p: Problem, E: Real, kappa: Real, r_match: Real, r_out: Real, opts: SolverOptions, level: int) -> Mesh:
    precision = opts.precision
    return build_mesh(
        p.evaluator(precision),
        E,
        kappa,
        r_match,
        r_out,
        gauss_tableau(opts.solver.collocation_stages.get(precision), precision),
        phase_step=opts.solver.mesh_phase_step,
        tail_step=opts.solver.mesh_tail_step,
        level=level,
    )


def solve_state(p: Problem, state: StateSpec, opts: SolverOptions | None = None) -> QlmRun:
    """WKB energy → Langer seed → quasilinear iteration, repeated on refined meshes until E settles."""
    opts = opts or SolverOptions()
    precision = opts.precision
    settings = opts.solver
    ev = p.evaluator(precision)
    e_wkb = wkb_energy(p, state, opts.with_tunneling, precision=precision, settings=opts.wkb)
    kappa = ev.phase_scale(e_wkb) * opts.kappa_factor
    turning = find_turning_points(
        p, e_wkb, KsqMode.exact, scan_points=opts.wkb.scan_points, rtol=opts.wkb.turning_point_rtol.get(precision)
    )
    r_match = turning.outer
    if r_match is None:
        r_match = turning.well[1]
    r_out = precision.scalar(tail_radius(p, e_wkb, r_match, settings.tail_action))
    if r_out > ev.r_max:
        r_out = ev.r_max

    mesh = _mesh(p, e_wkb, kappa, r_match, r_out, opts, 0)
    seed = langer_wavefunction(p, e_wkb, state, grid=list(mesh.points), wkb=opts.wkb, solver=settings)
    u0 = PhaseFunction(kappa=kappa, mesh=mesh, u=seed_phase(seed.chi0, seed.chi0_prime, kappa))
    logging.info(
        f"{p.name} {state.label}: E_WKB={float(e_wkb):.15g}, κ={float(kappa):.6g}, "
        f"r_match={float(r_match):.8g}, r_out={float(r_out):.6g}, {mesh.steps} steps"
    )

    history, converged = _iterate(p, state, e_wkb, u0, opts)
    if not converged:
        logging.warning(f"{p.name} {state.label}: no convergence after {settings.max_iter} iterations")
        raise ConvergenceError(
            f"{p.name} {state.label}: iteration cap {settings.max_iter} reached",
            history=[(it.index, it.E, it.defect) for it in history],
        )
    energy = history[-1].E
    accepted_level = 0
    if opts.refine:
        refine_tol = settings.refine_tol.get(precision)
        level_energy, level_phase = energy, history[-1].phase
        for level in range(1, settings.max_refinements + 1):
            finer = _mesh(p, e_wkb, kappa, r_match, r_out, opts, level)
            refined, ok = _iterate(p, state, level_energy, interpolate(level_phase, finer), opts)
            if not ok:
                raise ConvergenceError(
                    f"{p.name} {state.label}: no convergence on mesh level {level}",
                    history=[(it.index, it.E, it.defect) for it in refined],
                )
            finer_energy = refined[-1].E
            settled = abs(float(finer_energy - level_energy)) <= refine_tol * abs(float(finer_energy))
            logging.debug(
                f"{p.name} {state.label}: mesh level {level}: E={finer_energy:.25g} "
                f"(change {float(finer_energy - level_energy):.3g})"
            )
            energy = finer_energy
            if settled:
                accepted_level = level - 1
                break
            level_energy, level_phase = finer_energy, refined[-1].phase
        else:
            accepted_level = settings.max_refinements
            logging.warning(f"{p.name} {state.label}: mesh refinement did not settle within tolerance")
        if accepted_level > 0:
            # report the iteration history from the seed on the accepted mesh
            mesh = _mesh(p, e_wkb, kappa, r_match, r_out, opts, accepted_level)
            chi, dchi = seed.evaluate(list(mesh.points))
            u0 = PhaseFunction(kappa=kappa, mesh=mesh, u=seed_phase(chi, dchi, kappa))
            history, converged = _iterate(p, state, e_wkb, u0, opts)

    logging.info(
        f"{p.name} {state.label}: E_QLM(1)={float(history[0].E):.15g}, E_QLM={energy:.25g}, K={len(history)}"
    )
    return QlmRun(
        problem=p.name,
        state=state,
        e_wkb=e_wkb,
        iterates=history,
        converged=converged,
        energy=energy,
        seed=seed,
        mesh_level=accepted_level,
    )


def seed_wavefunction(run: QlmRun) -> Wavefunction:
    """The Langer seed on the final mesh, normalized like the reconstructed iterates."""
    mesh = run.phase.mesh
    chi, _ = run.seed.evaluate(list(mesh.points))
    return Wavefunction(radii=list(mesh.points), chi=normalize(chi), kappa=run.phase.kappa)


def iterate_wavefunction(run: QlmRun, p: Problem, index: int = -1) -> Wavefunction:
    it = run.iterates[index]
    return reconstruct_wavefunction(it.phase, p, it.E)


def digits(value: Real, reference: Real) -> float:
    """Number of correct significant digits of `value` against `reference`."""
    error = abs(float(value - reference))
    if error == 0.0:
        return math.inf
    return -math.log10(error / abs(float(reference)))
