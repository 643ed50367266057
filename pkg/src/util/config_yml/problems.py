from decimal import Decimal
from enum import StrEnum, auto

from pydantic import BaseModel, Field


class PotentialKind(StrEnum):
    anharmonic = auto()
    log = auto()
    woodsaxon = auto()
    twopower = auto()
    harmonic = auto()
    breitcoulomb = auto()
    custom = auto()


class Parity(StrEnum):
    node_at_origin = auto()
    zero_derivative_at_origin = auto()


class ProblemDefinition(BaseModel):
    """Plain key-value problem definition as written in the YAML `problems:` mapping."""

    potential: PotentialKind
    m: Decimal = Field(Decimal(1), gt=0)
    l: int = Field(0, ge=0)
    parity: Parity = Parity.node_at_origin
    params: dict[str, Decimal] = {}
    expression: str | None = None
    symmetric: bool = False
    r_min: Decimal = Decimal("1e-8")
    r_max: Decimal = Decimal(20)
