from .base import EquationModel, InadmissibleState
from .euler import Euler1D, Euler2D, RoeState
from .scalar import (
    Advection1D,
    Advection2D,
    BuckleyLeverett1D,
    Burgers1D,
    Burgers2D,
)
from .shallow_water import GRAVITY, SWE1D, SWE2D

__all__ = [
    "EquationModel",
    "InadmissibleState",
    "Euler1D",
    "Euler2D",
    "RoeState",
    "Advection1D",
    "Advection2D",
    "Burgers1D",
    "Burgers2D",
    "BuckleyLeverett1D",
    "SWE1D",
    "SWE2D",
    "GRAVITY",
]
