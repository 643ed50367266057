"""Modified-midpoint stepping with polynomial extrapolation to zero step size.

Integrates χ'' = −k²(r) χ as the pair (χ, χ'); the extrapolation tableau uses
the step sequence 2, 4, 6, ... and accepts the first column that meets the
local tolerance.
"""

from collections.abc import Callable
from dataclasses import dataclass

from util.errors import RefinementError
from xprec import Real

KsqFn = Callable[[Real], Real]

_SAFETY = 0.9
_MIN_STEP = 1e-14


@dataclass
class StepResult:
    chi: Real
    dchi: Real
    accepted: Real
    proposed: float


def _midpoint(ksq: KsqFn, r0: Real, chi: Real, dchi: Real, H: Real, n: int) -> tuple[Real, Real]:
    h = H / n
    y_prev, d_prev = chi, dchi
    y, d = chi + h * dchi, dchi - h * ksq(r0) * chi
    for m in range(1, n):
        r = r0 + m * h
        y_next = y_prev + 2 * h * d
        d_next = d_prev - 2 * h * ksq(r) * y
        y_prev, d_prev, y, d = y, d, y_next, d_next
    end_ksq = ksq(r0 + H)
    return (y + y_prev + h * d) / 2, (d + d_prev - h * end_ksq * y) / 2


def gbs_step(
    ksq: KsqFn,
    r0: Real,
    chi: Real,
    dchi: Real,
    H: Real,
    *,
    scale: float,
    tol: float,
    max_columns: int,
) -> StepResult:
    """Take one extrapolated step of at most H, shrinking it until the tableau converges.

    `scale` is the local wavenumber used to weigh χ' against χ in the error norm.
    """
    while True:
        rows: list[list[tuple[Real, Real]]] = []
        sequence: list[int] = []
        for j in range(max_columns):
            n = 2 * (j + 1)
            sequence.append(n)
            row = [_midpoint(ksq, r0, chi, dchi, H, n)]
            for k in range(1, j + 1):
                # (n_j/n_{j-k})² − 1 as an integer quotient
                low = sequence[j - k] ** 2
                gap = sequence[j] ** 2 - low
                y_hi, d_hi = row[k - 1]
                y_lo, d_lo = rows[j - 1][k - 1]
                row.append((y_hi + (y_hi - y_lo) * low / gap, d_hi + (d_hi - d_lo) * low / gap))
            rows.append(row)
            if j < 2:
                continue
            y, d = row[j]
            y_prev, d_prev = row[j - 1]
            size = (float(y) ** 2 + (float(d) / scale) ** 2) ** 0.5
            error = (float(y - y_prev) ** 2 + (float(d - d_prev) / scale) ** 2) ** 0.5
            if error <= tol * max(size, 1e-300):
                growth = (tol * max(size, 1e-300) / max(error, 1e-300)) ** (1.0 / (2 * j + 1))
                return StepResult(chi=y, dchi=d, accepted=H, proposed=abs(float(H)) * min(4.0, _SAFETY * growth))
        H = H / 2
        if abs(float(H)) < _MIN_STEP * max(abs(float(r0)), 1.0):
            raise RefinementError(f"extrapolated step underflow near r={float(r0):.10g}", location=float(r0))
