import ast
from collections.abc import Callable
from decimal import Decimal
from typing import Annotated, ClassVar, Literal, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, field_validator

import xprec
from util.errors import ConfigError
from xprec import Precision, Real

PotentialFn: TypeAlias = Callable[[Real, Real], Real]
"""V(r, E) in the working precision."""


class _PotentialBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    symmetric: ClassVar[bool] = False
    energy_dependent: ClassVar[bool] = False
    threshold: ClassVar[float | None] = None  # continuum edge of E, None for confining potentials

    def is_even(self) -> bool:
        return self.symmetric

    def compile(self, precision: Precision) -> PotentialFn:
        raise NotImplementedError


class Anharmonic(_PotentialBase):
    """V(r) = c·r^n, by default r⁵/2."""

    kind: Literal["anharmonic"] = "anharmonic"
    coupling: Decimal = Field(Decimal("0.5"), gt=0)
    power: int = Field(5, gt=0)

    def compile(self, precision: Precision) -> PotentialFn:
        c = precision.scalar(self.coupling)
        n = self.power
        return lambda r, E: c * r**n


class Logarithmic(_PotentialBase):
    kind: Literal["log"] = "log"

    def compile(self, precision: Precision) -> PotentialFn:
        return lambda r, E: xprec.log(r)


class WoodSaxon(_PotentialBase):
    kind: Literal["woodsaxon"] = "woodsaxon"
    v0: Decimal = Field(Decimal(24), gt=0)
    radius: Decimal = Field(Decimal(1), gt=0)
    diffuseness: Decimal = Field(Decimal("0.2"), gt=0)

    threshold: ClassVar[float | None] = 0.0

    def compile(self, precision: Precision) -> PotentialFn:
        v0 = precision.scalar(self.v0)
        radius = precision.scalar(self.radius)
        diffuseness = precision.scalar(self.diffuseness)
        return lambda r, E: -v0 / (1 + xprec.exp((r - radius) / diffuseness))


class TwoPower(_PotentialBase):
    """Double well V(r) = g²(r² − a²)²/2, symmetric under r → −r."""

    kind: Literal["twopower"] = "twopower"
    g2: Decimal = Field(Decimal(1) / Decimal(64), gt=0)
    a_well: Decimal = Field(Decimal(4), gt=0)

    symmetric: ClassVar[bool] = True

    def compile(self, precision: Precision) -> PotentialFn:
        half_g2 = precision.scalar(self.g2) / 2
        a2 = precision.scalar(self.a_well) ** 2

        def value(r: Real, E: Real) -> Real:
            d = r * r - a2
            return half_g2 * d * d

        return value


class Harmonic(_PotentialBase):
    kind: Literal["harmonic"] = "harmonic"
    omega: Decimal = Field(Decimal(1), gt=0)

    symmetric: ClassVar[bool] = True

    def compile(self, precision: Precision) -> PotentialFn:
        half_w2 = precision.scalar(self.omega) ** 2 / 2
        return lambda r, E: half_w2 * r * r


class BreitCoulomb(_PotentialBase):
    """Coulomb problem from the equal-mass two-body Dirac equation, written in ρ = αEr."""

    kind: Literal["breitcoulomb"] = "breitcoulomb"
    alpha: Decimal = Field(Decimal(1) / Decimal(137))
    N: int = Field(1, ge=1)
    L: int = Field(0, ge=0)
    S: int = Field(0, ge=0)
    J: int = Field(0, ge=0)

    energy_dependent: ClassVar[bool] = True
    threshold: ClassVar[float | None] = 1.0

    @field_validator("alpha")
    @classmethod
    def _alpha_in_range(cls, alpha: Decimal) -> Decimal:
        if not 0 < alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        return alpha

    def rho_potential(self, precision: Precision) -> Callable[[Real, Real, Real], Real]:
        """V(ρ; c, αE) with c the centrifugal numerator (l(l+1), or (l+½)² in Langer form).

        The spin term ¾α²/(r²(r + α)²) is written in natural units; in ρ = αEr it
        carries the extra factor (αE)², and its core radius sits at ρ = α²E.
        """
        alpha = precision.scalar(self.alpha)
        alpha2 = alpha * alpha
        quarter_alpha2 = alpha2 / 4
        core = alpha2 * 3 / 4

        def value(rho: Real, c: Real, alpha_e: Real) -> Real:
            rho2 = rho * rho
            shifted = rho + alpha * alpha_e
            return -1 / (rho * 2) + (c - quarter_alpha2) / rho2 + core * alpha_e * alpha_e / (rho2 * shifted * shifted)

        return value

    def compile(self, precision: Precision) -> PotentialFn:
        alpha = precision.scalar(self.alpha)
        v = self.rho_potential(precision)
        c = precision.scalar(self.L * (self.L + 1))

        def potential(r: Real, E: Real) -> Real:
            alpha_e = alpha * E
            return v(alpha_e * r, c, alpha_e)

        return potential


_CUSTOM_FUNCTIONS = {
    "exp": xprec.exp,
    "log": xprec.log,
    "sqrt": xprec.sqrt,
    "sin": xprec.sin,
    "cos": xprec.cos,
    "atan": xprec.atan,
}
_CUSTOM_NAMES = ("r", "E", "pi")


def _compile_expression(node: ast.AST, precision: Precision) -> PotentialFn:
    match node:
        case ast.Expression(body=body):
            return _compile_expression(body, precision)
        case ast.Constant(value=value) if isinstance(value, (int, float)) and not isinstance(value, bool):
            constant = precision.scalar(value if isinstance(value, int) else repr(value))
            return lambda r, E: constant
        case ast.Name(id="r"):
            return lambda r, E: r
        case ast.Name(id="E"):
            return lambda r, E: E
        case ast.Name(id="pi"):
            pi = xprec.pi(precision)
            return lambda r, E: pi
        case ast.UnaryOp(op=ast.USub(), operand=operand):
            inner = _compile_expression(operand, precision)
            return lambda r, E: -inner(r, E)
        case ast.UnaryOp(op=ast.UAdd(), operand=operand):
            return _compile_expression(operand, precision)
        case ast.BinOp(left=left, op=ast.Pow(), right=ast.Constant(value=int() as n)):
            base = _compile_expression(left, precision)
            return lambda r, E: base(r, E) ** n
        case ast.BinOp(left=left, op=op, right=right):
            lhs = _compile_expression(left, precision)
            rhs = _compile_expression(right, precision)
            match op:
                case ast.Add():
                    return lambda r, E: lhs(r, E) + rhs(r, E)
                case ast.Sub():
                    return lambda r, E: lhs(r, E) - rhs(r, E)
                case ast.Mult():
                    return lambda r, E: lhs(r, E) * rhs(r, E)
                case ast.Div():
                    return lambda r, E: lhs(r, E) / rhs(r, E)
                case ast.Pow():
                    return lambda r, E: xprec.pow(lhs(r, E), rhs(r, E))
        case ast.Call(func=ast.Name(id=name), args=[arg], keywords=[]) if name in _CUSTOM_FUNCTIONS:
            fn = _CUSTOM_FUNCTIONS[name]
            inner = _compile_expression(arg, precision)
            return lambda r, E: fn(inner(r, E))
    raise ConfigError(
        f"unsupported syntax in potential expression: {ast.dump(node)[:80]}; "
        f"allowed names {_CUSTOM_NAMES}, functions {sorted(_CUSTOM_FUNCTIONS)}"
    )


class Custom(_PotentialBase):
    """Potential given as an arithmetic expression in r (and E)."""

    kind: Literal["custom"] = "custom"
    expression: str
    even: bool = False

    def is_even(self) -> bool:
        return self.even

    @field_validator("expression")
    @classmethod
    def _parses(cls, expression: str) -> str:
        try:
            _compile_expression(ast.parse(expression, mode="eval"), Precision.double)
        except SyntaxError as e:
            raise ValueError(f"invalid potential expression {expression!r}: {e}") from e
        except ConfigError as e:
            raise ValueError(str(e)) from e
        return expression

    def compile(self, precision: Precision) -> PotentialFn:
        return _compile_expression(ast.parse(self.expression, mode="eval"), precision)


PotentialSpec = Annotated[
    Anharmonic | Logarithmic | WoodSaxon | TwoPower | Harmonic | BreitCoulomb | Custom,
    Field(discriminator="kind"),
]
