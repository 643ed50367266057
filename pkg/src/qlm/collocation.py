"""Gauss–Legendre collocation for scalar linear ODEs y' = A(r) y + B(r)."""

import functools
from dataclasses import dataclass

from xprec import Precision, Real
from xprec.linalg import solve
from xprec.quadrature import gauss_legendre


@dataclass(frozen=True)
class Tableau:
    c: tuple[Real, ...]
    a: tuple[tuple[Real, ...], ...]
    b: tuple[Real, ...]

    @property
    def stages(self) -> int:
        return len(self.c)


@functools.cache
def gauss_tableau(stages: int, precision: Precision) -> Tableau:
    """Butcher coefficients of the s-stage Gauss method (order 2s) on nodes c_j in (0, 1)."""
    c, b = gauss_legendre(stages, precision)
    # Σ_j c_j^(k-1) a_ij = c_i^k / k for k = 1..s
    vandermonde = [[cj ** k if k else cj * 0 + 1 for cj in c] for k in range(stages)]
    rhs = [[ci ** (k + 1) / (k + 1) for ci in c] for k in range(stages)]
    columns = solve(vandermonde, rhs)
    a = tuple(tuple(columns[j][i] for j in range(stages)) for i in range(stages))
    return Tableau(c=c, a=a, b=b)


def collocation_step(
    tableau: Tableau,
    h: Real,
    start: list[Real],
    coefficient: list[Real],
    sources: list[list[Real]],
) -> tuple[list[list[Real]], list[Real]]:
    """One step for several right-hand sides sharing A.

    `coefficient` holds A at the stage points, `sources[k]` the source of system k.
    Returns the stage values (stage-major, one entry per system) and the end values.
    """
    s = tableau.stages
    a = tableau.a
    matrix = [
        [(1 if i == j else 0) - h * a[i][j] * coefficient[j] for j in range(s)] for i in range(s)
    ]
    rhs = []
    for i in range(s):
        row = []
        for y0, source in zip(start, sources):
            acc = y0
            for j in range(s):
                acc = acc + h * a[i][j] * source[j]
            row.append(acc)
        rhs.append(row)
    stage_values = solve(matrix, rhs)
    end = []
    for k, (y0, source) in enumerate(zip(start, sources)):
        acc = y0
        for j in range(s):
            acc = acc + h * tableau.b[j] * (coefficient[j] * stage_values[j][k] + source[j])
        end.append(acc)
    return stage_values, end


def quadrature_step(tableau: Tableau, h: Real, start: Real, integrand: list[Real]) -> tuple[list[Real], Real]:
    """∫ of a function known at the stage points: values at the stages and at the step end."""
    s = tableau.stages
    stage_values = []
    for i in range(s):
        acc = start
        for j in range(s):
            acc = acc + h * tableau.a[i][j] * integrand[j]
        stage_values.append(acc)
    end = start
    for j in range(s):
        end = end + h * tableau.b[j] * integrand[j]
    return stage_values, end
