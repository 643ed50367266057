from dataclasses import dataclass, field
from enum import StrEnum, auto

import numpy as np

from problems import KsqMode, Parity, Problem
from util.errors import NoBoundStateError
from util.logging import logging
from xprec import Precision, Real
from xprec.roots import bisect


class TurningKind(StrEnum):
    inner = auto()
    outer = auto()
    barrier_entry = auto()
    barrier_exit = auto()


@dataclass(frozen=True)
class TurningPoint:
    radius: Real
    kind: TurningKind
    rising: bool  # k² goes from negative to positive with increasing r


@dataclass(frozen=True)
class TurningPoints:
    E: Real
    mode: KsqMode
    points: list[TurningPoint] = field(default_factory=list)
    allowed_at_origin: bool = False

    @property
    def radii(self) -> list[Real]:
        return [tp.radius for tp in self.points]

    def of_kind(self, kind: TurningKind) -> list[Real]:
        return [tp.radius for tp in self.points if tp.kind is kind]

    @property
    def outer(self) -> Real | None:
        outer = self.of_kind(TurningKind.outer)
        return outer[-1] if outer else None

    @property
    def well(self) -> tuple[Real | None, Real]:
        """(a, b) of the active well; a is None when the well reaches the origin."""
        b = self.outer
        if b is None:
            raise NoBoundStateError(f"no outer turning point at E={float(self.E):.12g}")
        rising = [tp.radius for tp in self.points if tp.rising and tp.radius < b]
        return (rising[-1] if rising else None), b

    @property
    def barrier_edge(self) -> Real | None:
        """Edge a₁ of the central barrier (−a₁, a₁) of a symmetric problem, if any."""
        if self.allowed_at_origin:
            return None
        exits = [tp.radius for tp in self.points if tp.rising]
        return exits[0] if exits else None


def _classify(crossings: list[tuple[Real, bool]], parity: Parity, negative_at_origin: bool) -> list[TurningPoint]:
    points: list[TurningPoint] = []
    last_falling = max((i for i, (_, rising) in enumerate(crossings) if not rising), default=None)
    seen_rising = False
    for i, (radius, rising) in enumerate(crossings):
        if rising:
            if not seen_rising and not (parity is Parity.zero_derivative_at_origin and negative_at_origin):
                kind = TurningKind.inner
            else:
                kind = TurningKind.barrier_exit
            seen_rising = True
        else:
            kind = TurningKind.outer if i == last_falling else TurningKind.barrier_entry
        points.append(TurningPoint(radius=radius, kind=kind, rising=rising))
    return points


def find_turning_points(
    p: Problem,
    E: Real,
    mode: KsqMode = KsqMode.langer,
    *,
    scan_points: int = 4096,
    rtol: float | None = None,
) -> TurningPoints:
    """Bracket every sign change of k²(r; E) on a double-precision scan and refine by bisection."""
    precision = Precision.of(E)
    if rtol is None:
        rtol = 1e-28 if precision is Precision.extended else 1e-15
    ev = p.evaluator(precision)
    scan = p.evaluator(Precision.double)
    E_scan = float(E)
    radii = scan.scan_grid(scan_points)
    values = np.array([scan.ksq(float(r), E_scan, mode) for r in radii])
    positive = values > 0
    brackets = np.nonzero(positive[:-1] != positive[1:])[0]
    if brackets.size == 0:
        state = "allowed" if positive[0] else "forbidden"
        raise NoBoundStateError(
            f"k² does not change sign on [{radii[0]:.6g}, {radii[-1]:.6g}] at E={E_scan:.12g} "
            f"(everywhere {state})"
        )

    def ksq(r: Real) -> Real:
        return ev.ksq(r, E, mode)

    crossings: list[tuple[Real, bool]] = []
    for i in brackets:
        lo, hi = bisect(
            ksq,
            precision.scalar(float(radii[i])),
            precision.scalar(float(radii[i + 1])),
            rtol=rtol,
            atol=1e-300,
        )
        crossings.append(((lo + hi) / 2, not bool(positive[i])))
    points = _classify(crossings, p.parity, negative_at_origin=not bool(positive[0]))
    logging.debug(
        f"{p.name}: turning points at E={E_scan:.12g}: "
        + ", ".join(f"{tp.kind}@{float(tp.radius):.10g}" for tp in points)
    )
    return TurningPoints(E=E, mode=mode, points=points, allowed_at_origin=bool(positive[0]))
