from decimal import Decimal

from pydantic import BaseModel, Field

from xprec import Precision


class PerPrecision(BaseModel):
    """A setting with one value per precision mode."""

    double: float
    extended: float

    def get(self, precision: Precision) -> float:
        return self.extended if precision is Precision.extended else self.double


class PerPrecisionInt(BaseModel):
    double: int
    extended: int

    def get(self, precision: Precision) -> int:
        return self.extended if precision is Precision.extended else self.double


class SolverSettings(BaseModel):
    energy_tol: PerPrecision = PerPrecision(double=1e-12, extended=1e-21)
    defect_tol: PerPrecision = PerPrecision(double=1e-10, extended=1e-20)
    max_iter: int = Field(60, gt=0)
    max_energy_steps: int = Field(40, gt=0)
    collocation_stages: PerPrecisionInt = PerPrecisionInt(double=4, extended=6)
    mesh_phase_step: float = Field(0.25, gt=0)
    mesh_tail_step: float = Field(1.0, gt=0)
    refine_tol: PerPrecision = PerPrecision(double=1e-12, extended=1e-22)
    max_refinements: int = Field(4, ge=0)
    tail_action: float = Field(55.0, gt=0)


class OracleSettings(BaseModel):
    local_tol: PerPrecision = PerPrecision(double=1e-14, extended=1e-28)
    energy_tol: PerPrecision = PerPrecision(double=1e-13, extended=1e-23)
    max_columns: PerPrecisionInt = PerPrecisionInt(double=8, extended=12)
    scan_points: int = Field(64, gt=2)
    bracket_rtol: float = Field(1e-9, gt=0)
    renorm_every: int = Field(64, gt=0)


class WkbSettings(BaseModel):
    scan_points: int = Field(4096, gt=8)
    energy_scan: int = Field(400, gt=8)
    quantization_tol: PerPrecision = PerPrecision(double=1e-13, extended=1e-24)
    turning_point_rtol: PerPrecision = PerPrecision(double=1e-15, extended=1e-28)


class BreitSettings(BaseModel):
    alpha_inverse: Decimal = Field(Decimal(137), gt=1)

    @property
    def alpha(self) -> Decimal:
        return 1 / self.alpha_inverse
