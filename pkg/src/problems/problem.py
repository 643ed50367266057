import functools
from decimal import Decimal
from enum import StrEnum, auto
from typing import Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

import xprec
from problems.potentials import BreitCoulomb, PotentialSpec
from util.config_yml.problems import Parity
from util.errors import DomainError
from xprec import Precision, Real


class KsqMode(StrEnum):
    exact = auto()
    langer = auto()


class StateSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_nodes: int = Field(ge=0)
    label: str


class Problem(BaseModel):
    """Potential, mass, orbital momentum, origin convention and radial domain (ħ = 1)."""

    model_config = ConfigDict(frozen=True)

    name: str
    potential: PotentialSpec
    m: Decimal = Field(Decimal(1), gt=0)
    l: int = Field(0, ge=0)
    parity: Parity = Parity.node_at_origin
    r_min: Decimal = Field(Decimal("1e-8"), ge=0)
    r_max: Decimal = Field(gt=0)

    @model_validator(mode="after")
    def _check_domain(self) -> Self:
        if self.r_min >= self.r_max:
            raise ValueError(f"r_min={self.r_min} must be below r_max={self.r_max}")
        if self.parity is Parity.node_at_origin and self.r_min <= 0:
            raise ValueError("node_at_origin problems carry a centrifugal term and need r_min > 0")
        if self.parity is Parity.zero_derivative_at_origin:
            if not self.potential.is_even():
                raise ValueError("zero_derivative_at_origin needs a potential even in r")
            if self.r_min != 0:
                raise ValueError("zero_derivative_at_origin problems start at r_min = 0")
            if self.l != 0:
                raise ValueError("zero_derivative_at_origin problems are one-dimensional (l = 0)")
        if isinstance(self.potential, BreitCoulomb) and self.parity is not Parity.node_at_origin:
            raise ValueError("breitcoulomb problems are radial (node_at_origin)")
        return self

    @property
    def energy_dependent(self) -> bool:
        return self.potential.energy_dependent

    @property
    def symmetric(self) -> bool:
        return self.potential.is_even()

    @property
    def has_centrifugal(self) -> bool:
        return self.parity is Parity.node_at_origin

    def evaluator(self, precision: Precision) -> "ProblemEvaluator":
        return _evaluator(self, precision)


@functools.cache
def _evaluator(problem: Problem, precision: Precision) -> "ProblemEvaluator":
    return ProblemEvaluator(problem, precision)


class ProblemEvaluator:
    """A Problem with its constants converted to one precision; every solver works through this."""

    def __init__(self, problem: Problem, precision: Precision) -> None:
        self.problem = problem
        self.precision = precision
        self.r_min: Real = precision.scalar(problem.r_min)
        self.r_max: Real = precision.scalar(problem.r_max)
        self.two_m: Real = precision.scalar(problem.m) * 2
        self.symmetric = problem.symmetric
        self._potential = problem.potential.compile(precision)
        self._breit = problem.potential if isinstance(problem.potential, BreitCoulomb) else None
        l = problem.l
        self._centrifugal: dict[KsqMode, Real | None]
        if problem.has_centrifugal:
            self._centrifugal = {
                KsqMode.exact: precision.scalar(l * (l + 1)) if l else None,
                KsqMode.langer: precision.scalar((2 * l + 1) ** 2) / 4,
            }
        else:
            self._centrifugal = {KsqMode.exact: None, KsqMode.langer: None}
        if self._breit is not None:
            self._alpha = precision.scalar(self._breit.alpha)
            self._rho_potential = self._breit.rho_potential(precision)
            self._breit_c = {
                KsqMode.exact: precision.scalar(l * (l + 1)),
                KsqMode.langer: precision.scalar((2 * l + 1) ** 2) / 4,
            }
        self._zero = precision.scalar(0)
        self._diff_step = 6.0e-11 if precision is Precision.extended else 6.0e-6

    def scalar(self, value: object) -> Real:
        return self.precision.scalar(value)

    def check_domain(self, r: Real) -> None:
        radius = abs(r) if self.symmetric else r
        if not self.r_min <= radius <= self.r_max:
            raise DomainError(
                f"r={float(r):.6g} outside [{float(self.r_min):.6g}, {float(self.r_max):.6g}] "
                f"for problem {self.problem.name}"
            )

    def potential(self, r: Real, E: Real | None = None) -> Real:
        self.check_domain(r)
        if E is None:
            if self._breit is not None:
                raise DomainError("breitcoulomb potential needs the trial energy")
            E = self._zero
        return self._potential(r, E)

    def ksq(self, r: Real, E: Real, mode: KsqMode = KsqMode.exact) -> Real:
        """Local wavenumber squared k²(r; E); the centrifugal term is dropped for symmetric 1-D states."""
        self.check_domain(r)
        if self._breit is not None:
            alpha_e = self._alpha * E
            v = self._rho_potential(alpha_e * r, self._breit_c[mode], alpha_e)
            return -(1 - E * E) / 4 - alpha_e * alpha_e * v
        value = self.two_m * (E - self._potential(r, E))
        c = self._centrifugal[mode]
        if c is not None:
            value = value - c / (r * r)
        return value

    def dksq_denergy(self, r: Real, E: Real, mode: KsqMode = KsqMode.exact) -> Real:
        if self._breit is None:
            return self.two_m
        h = self._diff_step
        return (self.ksq(r, E + h, mode) - self.ksq(r, E - h, mode)) / (2 * h)

    def dksq_dr(self, r: Real, E: Real, mode: KsqMode = KsqMode.exact) -> tuple[Real, Real]:
        """First and second r-derivatives of k² by central differences."""
        h = self._diff_step * max(abs(float(r)), 1e-3)
        # only zero-derivative problems may be sampled across the origin
        if float(r) - 2 * h < float(self.r_min) and self.problem.parity is Parity.node_at_origin:
            k0, k1, k2 = (self.ksq(r + i * h, E, mode) for i in range(3))
            return (4 * k1 - 3 * k0 - k2) / (2 * h), (k0 - 2 * k1 + k2) / (h * h)
        k_plus = self.ksq(r + h, E, mode)
        k_minus = self.ksq(r - h, E, mode)
        k_mid = self.ksq(r, E, mode)
        return (k_plus - k_minus) / (2 * h), (k_plus - 2 * k_mid + k_minus) / (h * h)

    def origin_log_derivative(self, E: Real) -> Real | None:
        """χ'/χ at r_min for the regular solution; None when χ(r_min) = 0 exactly (r_min = 0)."""
        if self.problem.parity is Parity.zero_derivative_at_origin:
            return self._zero
        if self.r_min == 0:
            return None
        ksq = self.ksq(self.r_min, E)
        power_law = (self.problem.l + 1) / self.r_min
        if ksq < 0:
            decay = xprec.sqrt(-ksq)
            if decay > power_law:
                return decay
        return power_law

    def scan_grid(self, points: int, r_lo: float | None = None, r_hi: float | None = None) -> np.ndarray:
        """Double-precision scan grid, log-spaced when the domain spans several decades."""
        lo = float(self.r_min) if r_lo is None else r_lo
        hi = float(self.r_max) if r_hi is None else r_hi
        if lo > 0 and hi / lo > 1e3:
            return np.geomspace(lo, hi, points)
        return np.linspace(lo, hi, points)

    def energy_window(self, points: int = 2048) -> tuple[float, float]:
        """(E_lo, E_hi) enclosing the bound spectrum reachable on the domain."""
        if self._breit is not None:
            alpha = float(self._breit.alpha)
            return 1.0 - alpha * alpha / 2, 1.0
        double = self.problem.evaluator(Precision.double)
        radii = double.scan_grid(points)
        values = np.array([double.potential(float(r)) for r in radii])
        lo = float(values.min())
        threshold = self.problem.potential.threshold
        hi = threshold if threshold is not None else float(values[-1])
        return lo, hi

    def phase_scale(self, E: Real) -> Real:
        """κ for the phase u = arctan(−κχ/χ'), fixed for a whole run."""
        if self._breit is not None:
            return xprec.sqrt(abs(1 - E * E) / 4)
        if abs(float(E)) >= 1e-3:
            return xprec.sqrt(self.two_m * abs(E))
        lo, _ = self.energy_window()
        return xprec.sqrt(self.two_m * abs(self.scalar(lo))) / 2


def potential_value(p: Problem, r: Real, E: Real | None = None) -> Real:
    return p.evaluator(Precision.of(r)).potential(r, E)


def effective_ksq(p: Problem, E: Real, r: Real, mode: KsqMode = KsqMode.exact) -> Real:
    return p.evaluator(Precision.of(r)).ksq(r, E, mode)
