from oracle.gbs import StepResult, gbs_step
from oracle.shooting import (Direction, Domain, ShootingResult, exact_energy,
                             integrate_schrodinger, shoot, shooting_domain,
                             wavefunction)

__all__ = [
    "Direction",
    "Domain",
    "ShootingResult",
    "StepResult",
    "exact_energy",
    "gbs_step",
    "integrate_schrodinger",
    "shoot",
    "shooting_domain",
    "wavefunction",
]
