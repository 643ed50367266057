from decimal import Decimal, localcontext
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, computed_field

from problems.benchmarks import PublishedRow
from xprec import Real

ENERGY_DIGITS = 21
DEVIATION_DIGITS = 3


def to_decimal(value: Real) -> Decimal:
    return Decimal(format(value, ".32g"))


def _percent(exact: Decimal | None, other: Decimal | None) -> Decimal | None:
    if exact is None or other is None or exact == 0:
        return None
    with localcontext() as ctx:
        ctx.prec = 40
        return 100 * (exact - other) / exact


class EnergyResult(BaseModel):
    """One benchmark row: WKB, first-iterate, converged and exact energies of a state."""

    model_config = ConfigDict(frozen=True)

    problem: str
    state: str
    e_wkb: Decimal | None = None
    e_qlm1: Decimal | None = None
    e_qlm: Decimal | None = None
    iterations: int | None = None
    e_exact: Decimal | None = None
    error: str | None = None
    converged: bool = True

    @computed_field  # type: ignore[prop-decorator]
    @property
    def d1(self) -> Decimal | None:
        """Percent deviation of the WKB energy."""
        return _percent(self.e_exact, self.e_wkb)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def d2(self) -> Decimal | None:
        """Percent deviation of the first quasilinear iterate."""
        return _percent(self.e_exact, self.e_qlm1)

    @property
    def ok(self) -> bool:
        return self.error is None

    def deviations(self, published: PublishedRow | None) -> dict[str, float | None]:
        """Relative deviation of every computed column from the published row."""
        pairs = {
            "E_WKB": (self.e_wkb, published.e_wkb if published else None),
            "E_QLM1": (self.e_qlm1, published.e_qlm1 if published else None),
            "E_QLM": (self.e_qlm, published.e_qlm if published else None),
            "E_exact": (self.e_exact, published.e_exact if published else None),
        }
        deviations: dict[str, float | None] = {}
        for column, (computed, reference) in pairs.items():
            if computed is None or reference is None:
                deviations[f"dev_{column}"] = None
                continue
            expected = Decimal(reference)
            with localcontext() as ctx:
                ctx.prec = 40
                deviations[f"dev_{column}"] = float((computed - expected) / expected)
        return deviations

    def to_row(self, published: PublishedRow | None = None) -> dict[str, Any]:
        return {
            "problem": self.problem,
            "state": self.state,
            "E_WKB": format_energy(self.e_wkb),
            "E_QLM1": format_energy(self.e_qlm1),
            "E_QLM": format_energy(self.e_qlm),
            "K": self.iterations,
            "E_exact": format_energy(self.e_exact),
            "D1": format_deviation(self.d1),
            "D2": format_deviation(self.d2),
            **self.deviations(published),
            "status": "ok" if self.ok else self.error,
        }


def format_energy(value: Decimal | None) -> str:
    return "" if value is None else format(value, f".{ENERGY_DIGITS}g")


def format_deviation(value: Decimal | None) -> str:
    return "" if value is None else format(value, f".{DEVIATION_DIGITS}g")


def log10_difference(a: list[float], b: list[float]) -> np.ndarray:
    """log10|a − b|, nan where the difference vanishes or changes sign.

    At a sign change the sample of the adjacent pair closer to zero is the dip
    towards −∞ and is blanked.
    """
    difference = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    magnitude = np.abs(difference)
    with np.errstate(divide="ignore"):
        result = np.where(magnitude == 0.0, np.nan, np.log10(magnitude))
    signs = np.sign(difference)
    for i in np.nonzero(signs[:-1] * signs[1:] < 0)[0]:
        result[i if magnitude[i] <= magnitude[i + 1] else i + 1] = np.nan
    return result


def header_lines(config_hash: str, alpha: Decimal, precision: str) -> list[str]:
    return [f"# config_hash: {config_hash}", f"# alpha: {alpha}", f"# precision: {precision}"]


def write_csv(df: pd.DataFrame, out: Path, header: list[str], *, text: bool = False) -> Path:
    """CSV with a commented provenance header; `text` also writes an aligned .txt next to it."""
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as f:
        for line in header:
            f.write(line + "\n")
        df.to_csv(f, index=False, lineterminator="\n", na_rep="nan")
    if text:
        with open(out.with_suffix(".txt"), "w") as f:
            for line in header:
                f.write(line + "\n")
            f.write(df.to_string(index=False, na_rep="") + "\n")
    return out
