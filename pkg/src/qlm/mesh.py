import bisect as bisection
import math
from dataclasses import dataclass

from problems import KsqMode, ProblemEvaluator
from qlm.collocation import Tableau
from util.errors import RefinementError
from util.logging import logging
from xprec import Precision, Real

_MAX_STEPS = 200_000
_MERGE = 0.25


@dataclass(frozen=True)
class Mesh:
    """Mesh nodes plus Gauss stage points, flattened in ascending r.

    Node i sits at flat index i·(s+1); stage j of step i at i·(s+1) + 1 + j.
    """

    nodes: list[Real]
    match_index: int
    tableau: Tableau
    points: list[Real]
    level: int = 0

    @property
    def stages(self) -> int:
        return self.tableau.stages

    @property
    def steps(self) -> int:
        return len(self.nodes) - 1

    @property
    def match_point(self) -> Real:
        return self.nodes[self.match_index]

    def node_index(self, i: int) -> int:
        return i * (self.stages + 1)

    def stage_indices(self, i: int) -> range:
        start = self.node_index(i) + 1
        return range(start, start + self.stages)

    def step_of(self, r: float) -> int:
        """Step containing r (clamped to the mesh)."""
        floats = [float(x) for x in self.nodes]
        i = bisection.bisect_right(floats, r) - 1
        return min(max(i, 0), self.steps - 1)


def _march(rate: "_Rate", start: float, end: float) -> list[float]:
    direction = 1.0 if end > start else -1.0
    points = [start]
    r = start
    while True:
        h = rate.step(r)
        h = min(h, rate.step(r + direction * h))
        if not h > 1e-13 * max(abs(r), 1.0):
            raise RefinementError(f"mesh step underflow near r={r:.6g} (h={h:.3g})", location=r)
        r_next = r + direction * h
        if direction * (end - r_next) <= _MERGE * h:
            points.append(end)
            return points
        points.append(r_next)
        r = r_next
        if len(points) > _MAX_STEPS:
            raise RefinementError(f"mesh exceeds {_MAX_STEPS} steps near r={r:.6g}", location=r)


class _Rate:
    """Local phase rate |k| + κ + max(k², 0)/κ, in double precision."""

    def __init__(self, ev: ProblemEvaluator, E: float, kappa: float, theta: float, tail_theta: float) -> None:
        self.ev = ev
        self.E = E
        self.kappa = kappa
        self.theta = theta
        self.tail_theta = tail_theta

    def step(self, r: float) -> float:
        r = min(max(r, float(self.ev.r_min)), float(self.ev.r_max))
        ksq = float(self.ev.ksq(r, self.E, KsqMode.exact))
        rate = math.sqrt(abs(ksq)) + self.kappa + max(ksq, 0.0) / self.kappa
        return (self.theta if ksq > 0 else self.tail_theta) / rate


def build_mesh(
    ev: ProblemEvaluator,
    E: Real,
    kappa: Real,
    r_match: Real,
    r_out: Real,
    tableau: Tableau,
    *,
    phase_step: float,
    tail_step: float,
    level: int = 0,
) -> Mesh:
    """Mesh from r_min to r_out through r_match, marched outwards from the match point on both sides."""
    double = ev.problem.evaluator(Precision.double)
    scale = 2.0**-level
    rate = _Rate(double, float(E), float(kappa), phase_step * scale, tail_step * scale)
    r_min, r_m, r_end = float(ev.r_min), float(r_match), float(r_out)
    inner = _march(rate, r_m, r_min)[::-1]
    outer = _march(rate, r_m, r_end)
    precision = ev.precision
    nodes = [precision.scalar(r) for r in inner[1:-1]]
    nodes = [ev.r_min, *nodes, r_match]
    match_index = len(nodes) - 1
    nodes += [precision.scalar(r) for r in outer[1:-1]]
    nodes.append(r_out)
    points: list[Real] = []
    for left, right in zip(nodes[:-1], nodes[1:]):
        h = right - left
        points.append(left)
        points.extend(left + h * c for c in tableau.c)
    points.append(nodes[-1])
    logging.debug(
        f"{ev.problem.name}: mesh level {level}: {len(nodes) - 1} steps "
        f"({match_index} inside r_match={r_m:.8g}), r in [{r_min:.3g}, {r_end:.6g}]"
    )
    return Mesh(nodes=nodes, match_index=match_index, tableau=tableau, points=points, level=level)
