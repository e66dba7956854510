"""Common equation-model interface used by fluxes, DG assembly and limiters."""

import numpy as np


class InadmissibleState(ValueError):
    """Raised when a state violates physical admissibility (rho, h or P <= 0)."""


class EquationModel:
    """Flux functions, wave speeds and (for systems) eigenstructures.

    States are arrays with a trailing component axis of length ncomp; all
    methods broadcast over leading axes. x/t arguments are accepted everywhere
    so variable-coefficient scalar models fit the same interface; models with
    autonomous fluxes ignore them.
    """

    name = "model"
    ncomp = 1
    dim = 1
    momentum_components = ()
    is_system = False
    # lower bound applied to |lambda|_max in time-step estimates; nonzero for
    # models whose instantaneous speeds can vanish while still about to grow
    # (time-periodic advection coefficients)
    speed_floor = 0.0

    def flux(self, u, x=None, t=0.0):
        raise NotImplementedError

    def flux_xy(self, u, x=None, y=None, t=0.0):
        raise NotImplementedError

    def max_wavespeed(self, u, x=None, t=0.0):
        """|lambda|_max per state; 2D models return an (..., 2) pair (x, y)."""
        raise NotImplementedError

    def source(self, u, x=None, y=None, t=0.0):
        """Source term S(u, x, t), or None when the model is source-free."""
        return None

    def check_admissible(self, u, context=""):
        return None


def _format_context(context):
    return f" ({context})" if context else ""
