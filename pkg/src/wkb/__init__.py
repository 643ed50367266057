from wkb.action import Region, action_integral, cumulative_action, tail_radius
from wkb.langer import LangerSeed, langer_wavefunction
from wkb.quantization import quantization_residual, wkb_energy
from wkb.turning_points import (TurningKind, TurningPoint, TurningPoints,
                                find_turning_points)

__all__ = [
    "LangerSeed",
    "Region",
    "TurningKind",
    "TurningPoint",
    "TurningPoints",
    "action_integral",
    "cumulative_action",
    "find_turning_points",
    "langer_wavefunction",
    "quantization_residual",
    "tail_radius",
    "wkb_energy",
]
