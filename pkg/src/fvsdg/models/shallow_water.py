"""Shallow water equations with the forced wave-speed modification a* = sqrt(gh/2).

The true flux is not homogeneous in U; after replacing the wave speed the
modified Jacobian A* satisfies F = A* U exactly, which is what the eigenvalue
splittings need. Mach-number splittings keep the true speed a = sqrt(gh) with
effective adiabatic index 2 and pressure g h^2 / 2.
"""

import numpy as np

from .base import EquationModel, InadmissibleState, _format_context

GRAVITY = 9.8120


class SWE1D(EquationModel):
    name = "swe1d"
    mach_kind = "swe"
    ncomp = 2
    dim = 1
    momentum_components = (1,)
    is_system = True

    def __init__(self, g=GRAVITY, bed_slope=None):
        self.g = g
        # bed_slope(x) = d z0 / dx feeding the source term -g h (z0)_x
        self.bed_slope = bed_slope

    def primitive(self, u):
        h = u[..., 0]
        return h, u[..., 1] / h

    def conservative(self, h, vel):
        h = np.asarray(h, dtype=float)
        return np.stack(np.broadcast_arrays(h, h * vel), axis=-1)

    def pressure(self, u):
        return 0.5 * self.g * u[..., 0] ** 2

    def sound_speed(self, u):
        return np.sqrt(self.g * u[..., 0])

    def check_admissible(self, u, context=""):
        if not np.all(self.admissible_mask(u)):
            raise InadmissibleState(f"nonpositive water depth{_format_context(context)}")

    def admissible_mask(self, u):
        return (u[..., 0] > 0.0) & np.all(np.isfinite(u), axis=-1)

    def flux(self, u, x=None, t=0.0):
        h, vel = self.primitive(u)
        return np.stack([u[..., 1], u[..., 1] * vel + 0.5 * self.g * h**2], axis=-1)

    def max_wavespeed(self, u, x=None, t=0.0):
        h, vel = self.primitive(u)
        return np.abs(vel) + np.sqrt(self.g * h)

    def source(self, u, x=None, y=None, t=0.0):
        if self.bed_slope is None:
            return None
        h = u[..., 0]
        s = np.zeros_like(u)
        s[..., 1] = -self.g * h * self.bed_slope(x)
        return s

    def eigenstructure(self, u):
        """Modified structure: Lambda* = (u - a*, u + a*), a* = sqrt(gh/2)."""
        h, vel = self.primitive(u)
        astar = np.sqrt(0.5 * self.g * h)
        lam = np.stack([vel - astar, vel + astar], axis=-1)
        one = np.ones_like(vel)
        R = np.stack(
            [
                np.stack([one, one], axis=-1),
                np.stack([vel - astar, vel + astar], axis=-1),
            ],
            axis=-2,
        )
        inv2a = 0.5 / astar
        L = np.stack(
            [
                np.stack([(vel + astar) * inv2a, -inv2a], axis=-1),
                np.stack([-(vel - astar) * inv2a, inv2a], axis=-1),
            ],
            axis=-2,
        )
        return lam, R, L

    def roe_average(self, ul, ur):
        """Depth-weighted velocity with h averaged arithmetically."""
        self.check_admissible(ul, "Roe average left state")
        self.check_admissible(ur, "Roe average right state")
        hl, vl = self.primitive(ul)
        hr, vr = self.primitive(ur)
        sl, sr = np.sqrt(hl), np.sqrt(hr)
        h = 0.5 * (hl + hr)
        vel = (sl * vl + sr * vr) / (sl + sr)
        return self.conservative(h, vel)


class SWE2D(EquationModel):
    name = "swe2d"
    mach_kind = "swe"
    ncomp = 3
    dim = 2
    momentum_components = (1, 2)
    is_system = True

    def __init__(self, g=GRAVITY):
        self.g = g

    def primitive(self, u):
        h = u[..., 0]
        return h, u[..., 1] / h, u[..., 2] / h

    def conservative(self, h, vx, vy):
        h = np.asarray(h, dtype=float)
        return np.stack(np.broadcast_arrays(h, h * vx, h * vy), axis=-1)

    def pressure(self, u):
        return 0.5 * self.g * u[..., 0] ** 2

    def sound_speed(self, u):
        return np.sqrt(self.g * u[..., 0])

    def check_admissible(self, u, context=""):
        if not np.all(self.admissible_mask(u)):
            raise InadmissibleState(f"nonpositive water depth{_format_context(context)}")

    def admissible_mask(self, u):
        return (u[..., 0] > 0.0) & np.all(np.isfinite(u), axis=-1)

    def flux_xy(self, u, x=None, y=None, t=0.0):
        h, vx, vy = self.primitive(u)
        p = 0.5 * self.g * h**2
        F = np.stack([u[..., 1], u[..., 1] * vx + p, u[..., 2] * vx], axis=-1)
        G = np.stack([u[..., 2], u[..., 1] * vy, u[..., 2] * vy + p], axis=-1)
        return F, G

    def normal_flux(self, u, n):
        F, G = self.flux_xy(u)
        return n[0] * F + n[1] * G

    def max_wavespeed(self, u, x=None, t=0.0):
        h, vx, vy = self.primitive(u)
        a = np.sqrt(self.g * h)
        return np.stack([np.abs(vx) + a, np.abs(vy) + a], axis=-1)

    def eigenstructure_n(self, u, n):
        """Modified normal structure: Lambda* = (qn - a*, qn, qn + a*)."""
        nx, ny = n
        h, vx, vy = self.primitive(u)
        astar = np.sqrt(0.5 * self.g * h)
        qn = vx * nx + vy * ny
        ql = -vx * ny + vy * nx
        lam = np.stack([qn - astar, qn, qn + astar], axis=-1)
        one = np.ones_like(qn)
        zero = np.zeros_like(qn)
        R = np.stack(
            [
                np.stack([one, zero, one], axis=-1),
                np.stack([vx - astar * nx, -ny * one, vx + astar * nx], axis=-1),
                np.stack([vy - astar * ny, nx * one, vy + astar * ny], axis=-1),
            ],
            axis=-2,
        )
        inv2a = 0.5 / astar
        L = np.stack(
            [
                np.stack([(astar + qn) * inv2a, -nx * inv2a, -ny * inv2a], axis=-1),
                np.stack([-ql, -ny * one, nx * one], axis=-1),
                np.stack([(astar - qn) * inv2a, nx * inv2a, ny * inv2a], axis=-1),
            ],
            axis=-2,
        )
        return lam, R, L

    def roe_average_n(self, u_int, u_ext, n):
        self.check_admissible(u_int, "Roe average interior state")
        self.check_admissible(u_ext, "Roe average exterior state")
        hl, vxl, vyl = self.primitive(u_int)
        hr, vxr, vyr = self.primitive(u_ext)
        sl, sr = np.sqrt(hl), np.sqrt(hr)
        h = 0.5 * (hl + hr)
        vx = (sl * vxl + sr * vxr) / (sl + sr)
        vy = (sl * vyl + sr * vyr) / (sl + sr)
        ubar = self.conservative(h, vx, vy)
        lam, R, L = self.eigenstructure_n(ubar, n)
        absA = np.einsum("...ik,...k,...kj->...ij", R, np.abs(lam), L)
        return ubar, (lam, R, L), absA
