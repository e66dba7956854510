"""Scalar conservation laws: advection (constant/variable coefficient),
Burgers in 1D/2D and the non-convex Buckley-Leverett flux.

Scalar models expose `a_coef` (1D) / `a_coef_n` (2D): the coefficient
a = K f'(u) satisfying f(u) = a u, which drives the scalar eigenvalue-split
flux. Models without such a K (Buckley-Leverett) leave it None.
"""

import numpy as np

from .base import EquationModel


class ScalarModel(EquationModel):
    ncomp = 1
    is_system = False

    def check_admissible(self, u, context=""):
        if not np.all(np.isfinite(u)):
            from .base import InadmissibleState

            raise InadmissibleState(f"non-finite scalar state ({context})")


class Advection1D(ScalarModel):
    """u_t + (c(x, t) u)_x = 0; c may be a constant or a callable c(x, t)."""

    name = "advection1d"
    dim = 1

    def __init__(self, speed=1.0, speed_floor=0.0):
        self._speed = speed
        self.speed_floor = speed_floor

    def speed(self, x, t):
        if callable(self._speed):
            return np.asarray(self._speed(x, t), dtype=float)
        return np.full(np.shape(x) if x is not None else (), float(self._speed))

    def flux(self, u, x=None, t=0.0):
        return self.speed(x, t)[..., None] * u

    def dflux(self, u, x=None, t=0.0):
        return np.broadcast_to(self.speed(x, t), u[..., 0].shape).astype(float)

    def a_coef(self, u, x=None, t=0.0):
        return np.broadcast_to(self.speed(x, t), u[..., 0].shape).astype(float)

    def max_wavespeed(self, u, x=None, t=0.0):
        return np.abs(np.broadcast_to(self.speed(x, t), u[..., 0].shape))

    def llf_alpha(self, ul, ur, x=None, t=0.0):
        return np.abs(np.broadcast_to(self.speed(x, t), ul[..., 0].shape))


class Burgers1D(ScalarModel):
    """u_t + (u^2/2)_x = 0; the split coefficient is a = u/2 (K = 1/2)."""

    name = "burgers1d"
    dim = 1

    def flux(self, u, x=None, t=0.0):
        return 0.5 * u * u

    def dflux(self, u, x=None, t=0.0):
        return u[..., 0]

    def a_coef(self, u, x=None, t=0.0):
        return 0.5 * u[..., 0]

    def max_wavespeed(self, u, x=None, t=0.0):
        return np.abs(u[..., 0])

    def llf_alpha(self, ul, ur, x=None, t=0.0):
        return np.maximum(np.abs(ul[..., 0]), np.abs(ur[..., 0]))


class BuckleyLeverett1D(ScalarModel):
    """u_t + (4u^2 / (4u^2 + (1-u)^2))_x = 0, with f'(u) = 8u(1-u)/(...)^2."""

    name = "buckley-leverett"
    dim = 1
    global_alpha = 2.4  # fixed global L-F bound used by the reference setup

    def flux(self, u, x=None, t=0.0):
        denom = 4.0 * u * u + (1.0 - u) ** 2
        return 4.0 * u * u / denom

    def dflux(self, u, x=None, t=0.0):
        u = u[..., 0]
        denom = 4.0 * u * u + (1.0 - u) ** 2
        return 8.0 * u * (1.0 - u) / denom**2

    a_coef = None

    def max_wavespeed(self, u, x=None, t=0.0):
        return np.abs(self.dflux(u))

    def llf_alpha(self, ul, ur, x=None, t=0.0):
        lo = np.minimum(ul[..., 0], ur[..., 0])
        hi = np.maximum(ul[..., 0], ur[..., 0])
        s = np.linspace(0.0, 1.0, 33)
        samp = lo[..., None] + (hi - lo)[..., None] * s
        return np.max(np.abs(self.dflux(samp[..., None])), axis=-1)


class Burgers2D(ScalarModel):
    """U_t + (U^2/2)_x + (U^2/2)_y = 0; a_n = (nx + ny) u / 2."""

    name = "burgers2d"
    dim = 2

    def flux_xy(self, u, x=None, y=None, t=0.0):
        f = 0.5 * u * u
        return f, f.copy()

    def a_coef_n(self, u, n, x=None, y=None, t=0.0):
        return 0.5 * (n[0] + n[1]) * u[..., 0]

    def dflux_xy(self, u, x=None, y=None, t=0.0):
        return u[..., 0], u[..., 0]

    def max_wavespeed(self, u, x=None, t=0.0):
        s = np.abs(u[..., 0])
        return np.stack([s, s], axis=-1)

    def llf_alpha_n(self, ul, ur, n, x=None, y=None, t=0.0):
        return np.abs(n[0] + n[1]) * np.maximum(np.abs(ul[..., 0]), np.abs(ur[..., 0]))


class Advection2D(ScalarModel):
    """U_t + (alpha(x,y,t) U)_x + (beta(x,y,t) U)_y = 0."""

    name = "advection2d"
    dim = 2

    def __init__(self, alpha, beta, speed_floor=0.0):
        self.alpha = alpha
        self.beta = beta
        self.speed_floor = speed_floor

    def _ab(self, x, y, t):
        return (
            np.asarray(self.alpha(x, y, t), dtype=float),
            np.asarray(self.beta(x, y, t), dtype=float),
        )

    def flux_xy(self, u, x=None, y=None, t=0.0):
        a, b = self._ab(x, y, t)
        return a[..., None] * u, b[..., None] * u

    def a_coef_n(self, u, n, x=None, y=None, t=0.0):
        a, b = self._ab(x, y, t)
        return np.broadcast_to(n[0] * a + n[1] * b, u[..., 0].shape).astype(float)

    def max_wavespeed(self, u, x=None, t=0.0):
        if x is None:
            raise ValueError("variable-coefficient advection needs positions for speeds")
        a, b = self._ab(x[..., 0], x[..., 1], t)
        shape = u[..., 0].shape
        return np.stack(
            [np.abs(np.broadcast_to(a, shape)), np.abs(np.broadcast_to(b, shape))],
            axis=-1,
        )

    def llf_alpha_n(self, ul, ur, n, x=None, y=None, t=0.0):
        a, b = self._ab(x, y, t)
        return np.abs(np.broadcast_to(n[0] * a + n[1] * b, ul[..., 0].shape))
