"""Phase form of the Riccati equation and its quasilinearized sweeps.

With χ = R sin u and χ' = −κ R cos u the radial equation becomes

    u' = f(r, u; E) = −κ cos²u − (k²/κ) sin²u,

which has no poles at the nodes of χ. Each node is a downward crossing of a
multiple of π.
"""

import math
from dataclasses import dataclass
from enum import StrEnum, auto

import xprec
from problems import KsqMode, Problem, ProblemEvaluator
from qlm.collocation import collocation_step
from qlm.mesh import Mesh
from util.errors import BracketResetError
from xprec import Precision, Real


class Direction(StrEnum):
    outward = auto()
    inward = auto()


@dataclass
class PhaseFunction:
    """Continuous phase u on every collocation point of `mesh`."""

    kappa: Real
    mesh: Mesh
    u: list[Real]

    @property
    def grid(self) -> list[Real]:
        return self.mesh.nodes

    @property
    def at_nodes(self) -> list[Real]:
        return [self.u[self.mesh.node_index(i)] for i in range(len(self.mesh.nodes))]

    def nodes(self) -> int:
        return count_nodes(self.u)

    def node_radii(self) -> list[float]:
        """Radii where u crosses −jπ downwards, linearly interpolated between collocation points."""
        radii = []
        pi = math.pi
        for (r0, u0), (r1, u1) in zip(
            zip(self.mesh.points, self.u), zip(self.mesh.points[1:], self.u[1:])
        ):
            lo, hi = math.floor(-float(u0) / pi), math.floor(-float(u1) / pi)
            for level in range(lo + 1, hi + 1):
                if level < 1:
                    continue
                target = -level * pi
                t = (target - float(u0)) / (float(u1) - float(u0))
                radii.append(float(r0) + t * (float(r1) - float(r0)))
        return radii


def count_nodes(u: list[Real]) -> int:
    """Number of levels −jπ (j ≥ 1) crossed downwards, in order of increasing r."""
    pi = math.pi
    total = 0
    previous = max(math.floor(-float(u[0]) / pi), 0)
    for value in u[1:]:
        level = max(math.floor(-float(value) / pi), 0)
        if level > previous:
            total += level - previous
        previous = level
    return total


class PhaseCoefficients:
    """k² and ∂k²/∂E on every collocation point of a mesh, refreshed per trial energy."""

    def __init__(self, ev: ProblemEvaluator, mesh: Mesh) -> None:
        self.ev = ev
        self.mesh = mesh
        self._static: list[Real] | None = None
        if not ev.problem.energy_dependent:
            zero = ev.scalar(0)
            # k² = 2mE − q(r)
            self._static = [-ev.ksq(r, zero, KsqMode.exact) for r in mesh.points]

    def ksq(self, E: Real) -> list[Real]:
        if self._static is not None:
            two_m_e = self.ev.two_m * E
            return [two_m_e - q for q in self._static]
        return [self.ev.ksq(r, E, KsqMode.exact) for r in self.mesh.points]

    def dksq_denergy(self, E: Real) -> list[Real]:
        if self._static is not None:
            return [self.ev.two_m] * len(self.mesh.points)
        return [self.ev.dksq_denergy(r, E, KsqMode.exact) for r in self.mesh.points]


def phase_ode_rhs(u: Real, r: Real, p: Problem, E: Real, kappa: Real) -> Real:
    """du/dr = −κ cos²u − (k²/κ) sin²u."""
    ksq = p.evaluator(Precision.of(E)).ksq(r, E, KsqMode.exact)
    s, c = xprec.sincos(u)
    return -kappa * c * c - ksq / kappa * s * s


def _linearization(u: Real, ksq: Real, dksq: Real, kappa: Real) -> tuple[Real, Real, Real]:
    """(f, ∂f/∂u, ∂f/∂E) at one point."""
    s, c = xprec.sincos(u)
    ratio = ksq / kappa
    f = -kappa * c * c - ratio * s * s
    f_u = 2 * s * c * (kappa - ratio)
    f_e = -dksq / kappa * s * s
    return f, f_u, f_e


def log_amplitude_rate(u: Real, ksq: Real, kappa: Real) -> Real:
    """(log R)' = −½ ∂f/∂u."""
    s, c = xprec.sincos(u)
    return s * c * (ksq / kappa - kappa)


@dataclass
class BoundaryValues:
    """Boundary phase and its energy derivative."""

    value: Real
    denergy: Real


def origin_phase(ev: ProblemEvaluator, E: Real, kappa: Real) -> Real:
    """u(r_min) for the regular solution: −arctan(κ/y₀), −π/2 when χ'(0) = 0, 0 for χ(0) = 0."""
    y0 = ev.origin_log_derivative(E)
    if y0 is None:
        return ev.scalar(0)
    if y0 == 0:
        return -xprec.pi(ev.precision) / 2
    return -xprec.atan(kappa / y0)


def outer_phase(ev: ProblemEvaluator, E: Real, kappa: Real, r_out: Real, n_nodes: int) -> Real:
    """u(r_out) on the decaying branch y = −K of a state with n_nodes nodes."""
    ksq = ev.ksq(r_out, E, KsqMode.exact)
    pi = xprec.pi(ev.precision)
    if ksq >= 0:
        return pi / 2 - (n_nodes + 1) * pi
    decay = xprec.sqrt(-ksq)
    return xprec.atan(kappa / decay) - (n_nodes + 1) * pi


def boundary_values(
    ev: ProblemEvaluator, E: Real, kappa: Real, r_out: Real, n_nodes: int
) -> tuple[BoundaryValues, BoundaryValues]:
    """Origin and outer boundary phases with central-difference energy derivatives."""
    h = (1e-12 if ev.precision is Precision.extended else 1e-6) * max(abs(float(E)), 1.0)

    def at(energy: Real) -> tuple[Real, Real]:
        return origin_phase(ev, energy, kappa), outer_phase(ev, energy, kappa, r_out, n_nodes)

    o0, r0 = at(E)
    o_plus, r_plus = at(E + h)
    o_minus, r_minus = at(E - h)
    return (
        BoundaryValues(o0, (o_plus - o_minus) / (2 * h)),
        BoundaryValues(r0, (r_plus - r_minus) / (2 * h)),
    )


@dataclass
class Sweep:
    """Solutions v (fixed E) and w = ∂u/∂E of the linearized phase equation from both boundaries.

    The flat arrays carry the outward solution up to and including the match node;
    the inward solution at the match node is kept separately.
    """

    v: list[Real]
    w: list[Real]
    v_in: Real
    w_in: Real
    match: int

    @property
    def mismatch(self) -> Real:
        return self.v_in - self.v[self.match]

    @property
    def slope(self) -> Real:
        return self.w[self.match] - self.w_in

    def combine(self, delta: Real) -> list[Real]:
        """u = v + δ·w; the match node takes the mean of the two sides."""
        u = [v + delta * w for v, w in zip(self.v, self.w)]
        m = self.match
        inside = u[m]
        outside = self.v_in + delta * self.w_in
        u[m] = (inside + outside) / 2
        return u


def _sweep_steps(
    mesh: Mesh,
    steps: range,
    backward: bool,
    start: tuple[Real, Real],
    coefficient: list[Real],
    source_v: list[Real],
    source_w: list[Real],
    v: list[Real],
    w: list[Real],
) -> tuple[Real, Real]:
    """Integrate both systems across `steps`, filling stage and node values; returns the final (v, w)."""
    y_v, y_w = start
    for i in steps:
        stages = list(mesh.stage_indices(i))
        if backward:
            stages.reverse()
            h = mesh.nodes[i] - mesh.nodes[i + 1]
        else:
            h = mesh.nodes[i + 1] - mesh.nodes[i]
        values, (y_v, y_w) = collocation_step(
            mesh.tableau,
            h,
            [y_v, y_w],
            [coefficient[q] for q in stages],
            [[source_v[q] for q in stages], [source_w[q] for q in stages]],
        )
        for q, (stage_v, stage_w) in zip(stages, values):
            v[q], w[q] = stage_v, stage_w
        end = mesh.node_index(i if backward else i + 1)
        v[end], w[end] = y_v, y_w
    return y_v, y_w


def linearized_sweep(
    u_prev: PhaseFunction,
    E: Real,
    coefficients: PhaseCoefficients,
    origin: BoundaryValues,
    outer: BoundaryValues,
) -> Sweep:
    """Solve u' = f(u_prev) + f_u(u_prev)(u − u_prev) + f_E(u_prev)·δE jointly for v and w."""
    mesh = u_prev.mesh
    kappa = u_prev.kappa
    ksq = coefficients.ksq(E)
    dksq = coefficients.dksq_denergy(E)
    coefficient: list[Real] = []
    source_v: list[Real] = []
    source_w: list[Real] = []
    for u, k2, dk2 in zip(u_prev.u, ksq, dksq):
        f, f_u, f_e = _linearization(u, k2, dk2, kappa)
        coefficient.append(f_u)
        source_v.append(f - f_u * u)
        source_w.append(f_e)
    size = len(mesh.points)
    v: list[Real] = [E * 0] * size
    w: list[Real] = [E * 0] * size
    v[0], w[0] = origin.value, origin.denergy
    _sweep_steps(
        mesh, range(mesh.match_index), False, (origin.value, origin.denergy),
        coefficient, source_v, source_w, v, w,
    )
    m = mesh.node_index(mesh.match_index)
    v_out, w_out = v[m], w[m]
    v[-1], w[-1] = outer.value, outer.denergy
    v_in, w_in = _sweep_steps(
        mesh, range(mesh.steps - 1, mesh.match_index - 1, -1), True, (outer.value, outer.denergy),
        coefficient, source_v, source_w, v, w,
    )
    v[m], w[m] = v_out, w_out
    return Sweep(v=v, w=w, v_in=v_in, w_in=w_in, match=m)


def energy_update(sweep: Sweep, previous: tuple[Real, Real] | None = None, E: Real | None = None) -> Real:
    """Newton step δE = M/(w_out − w_in) on the match-point mismatch M = v_in − v_out.

    Falls back to the secant through (E_prev, M_prev) when the sensitivities coincide.
    """
    mismatch, slope = sweep.mismatch, sweep.slope
    if float(slope) != 0.0:
        return mismatch / slope
    if previous is None or E is None:
        raise BracketResetError("phase sensitivity vanished at the match point", nodes=-1, expected=-1)
    e_prev, m_prev = previous
    return -mismatch * (E - e_prev) / (mismatch - m_prev)


def phase_iterate(
    u_prev: PhaseFunction,
    p: Problem,
    E: Real,
    *,
    n_nodes: int,
    direction: Direction = Direction.inward,
) -> PhaseFunction:
    """One quasilinear update at fixed E, integrated from a single boundary across the whole mesh."""
    ev = p.evaluator(Precision.of(E))
    mesh = u_prev.mesh
    coefficients = PhaseCoefficients(ev, mesh)
    origin, outer = boundary_values(ev, E, u_prev.kappa, mesh.nodes[-1], n_nodes)
    ksq = coefficients.ksq(E)
    coefficient, source = [], []
    zeros = [E * 0] * len(mesh.points)
    for u, k2 in zip(u_prev.u, ksq):
        f, f_u, _ = _linearization(u, k2, k2 * 0, u_prev.kappa)
        coefficient.append(f_u)
        source.append(f - f_u * u)
    v: list[Real] = [E * 0] * len(mesh.points)
    w: list[Real] = [E * 0] * len(mesh.points)
    if direction is Direction.inward:
        v[-1] = outer.value
        _sweep_steps(
            mesh, range(mesh.steps - 1, -1, -1), True, (outer.value, E * 0), coefficient, source, zeros, v, w
        )
    else:
        v[0] = origin.value
        _sweep_steps(mesh, range(mesh.steps), False, (origin.value, E * 0), coefficient, source, zeros, v, w)
    return PhaseFunction(kappa=u_prev.kappa, mesh=mesh, u=v)


def defect(u_new: PhaseFunction, u_old: PhaseFunction) -> float:
    """Max-norm change between iterates over all collocation points."""
    return max(abs(float(a - b)) for a, b in zip(u_new.u, u_old.u))


def seed_phase(chi: list[Real], dchi: list[Real], kappa: Real) -> list[Real]:
    """u = arctan(−κχ/χ') unwrapped along the grid, starting in (−π, 0]."""
    pi = xprec.pi_like(kappa)
    phases: list[Real] = []
    previous: Real | None = None
    for value, slope in zip(chi, dchi):
        angle = xprec.atan2(-kappa * value, slope)  # in (−π, π]
        if angle > 0:
            angle = angle - pi  # tan has period π
        if previous is not None:
            shift = round(float(previous - angle) / math.pi)
            angle = angle + shift * pi
        phases.append(angle)
        previous = angle
    return phases


def interpolate(phase: PhaseFunction, mesh: Mesh) -> PhaseFunction:
    """Carry a phase over to another mesh with the per-step collocation polynomial."""
    old = phase.mesh
    s = old.stages
    values: list[Real] = []
    for r in mesh.points:
        i = old.step_of(float(r))
        lo = old.node_index(i)
        xs = old.points[lo : lo + s + 2]
        ys = phase.u[lo : lo + s + 2]
        total = r * 0
        for j, (xj, yj) in enumerate(zip(xs, ys)):
            weight = r * 0 + 1
            for m, xm in enumerate(xs):
                if m != j:
                    weight = weight * (r - xm) / (xj - xm)
            total = total + weight * yj
        values.append(total)
    return PhaseFunction(kappa=phase.kappa, mesh=mesh, u=values)
