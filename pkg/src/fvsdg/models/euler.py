"""Compressible Euler equations in 1D and 2D: fluxes, eigenstructures, Roe averages."""

from dataclasses import dataclass

import numpy as np

from .base import EquationModel, InadmissibleState, _format_context


@dataclass(frozen=True)
class RoeState:
    """Sqrt-density-weighted interface state; P, a, E recovered indirectly."""

    rho: np.ndarray
    u: np.ndarray
    enthalpy: np.ndarray
    sound: np.ndarray
    pressure: np.ndarray
    energy: np.ndarray
    v: np.ndarray = None

    def conservative(self):
        if self.v is None:
            return np.stack([self.rho, self.rho * self.u, self.energy], axis=-1)
        return np.stack(
            [self.rho, self.rho * self.u, self.rho * self.v, self.energy], axis=-1
        )


class Euler1D(EquationModel):
    name = "euler1d"
    mach_kind = "euler"
    ncomp = 3
    dim = 1
    momentum_components = (1,)
    is_system = True

    def __init__(self, gamma=1.4):
        self.gamma = gamma

    # -- state algebra -------------------------------------------------
    def primitive(self, u):
        rho = u[..., 0]
        vel = u[..., 1] / rho
        pres = (self.gamma - 1.0) * (u[..., 2] - 0.5 * rho * vel**2)
        return rho, vel, pres

    def conservative(self, rho, vel, pres):
        rho = np.asarray(rho, dtype=float)
        e = pres / (self.gamma - 1.0) + 0.5 * rho * vel**2
        return np.stack(np.broadcast_arrays(rho, rho * vel, e), axis=-1)

    def sound_speed(self, u):
        rho, _, pres = self.primitive(u)
        return np.sqrt(self.gamma * pres / rho)

    def enthalpy(self, u):
        _, _, pres = self.primitive(u)
        return (u[..., 2] + pres) / u[..., 0]

    def check_admissible(self, u, context=""):
        if not np.all(self.admissible_mask(u)):
            raise InadmissibleState(
                f"nonpositive density or pressure{_format_context(context)}"
            )

    def admissible_mask(self, u):
        rho, _, pres = self.primitive(u)
        return (rho > 0.0) & (pres > 0.0) & np.all(np.isfinite(u), axis=-1)

    # -- fluxes and speeds ---------------------------------------------
    def flux(self, u, x=None, t=0.0):
        rho, vel, pres = self.primitive(u)
        return np.stack(
            [u[..., 1], u[..., 1] * vel + pres, vel * (u[..., 2] + pres)], axis=-1
        )

    def max_wavespeed(self, u, x=None, t=0.0):
        _, vel, _ = self.primitive(u)
        return np.abs(vel) + self.sound_speed(u)

    # -- eigenstructure (order u, u-a, u+a as in the splitting chapter) --
    def eigenstructure(self, u):
        rho, vel, _ = self.primitive(u)
        a = self.sound_speed(u)
        H = self.enthalpy(u)
        lam = np.stack([vel, vel - a, vel + a], axis=-1)

        one = np.ones_like(vel)
        R = np.stack(
            [
                np.stack([one, one, one], axis=-1),
                np.stack([vel, vel - a, vel + a], axis=-1),
                np.stack([0.5 * vel**2, H - vel * a, H + vel * a], axis=-1),
            ],
            axis=-2,
        )
        b1 = (self.gamma - 1.0) / a**2
        b2 = 0.5 * b1 * vel**2
        L = np.stack(
            [
                np.stack([one - b2, b1 * vel, -b1 * one], axis=-1),
                0.5 * np.stack([b2 + vel / a, -b1 * vel - 1.0 / a, b1 * one], axis=-1),
                0.5 * np.stack([b2 - vel / a, -b1 * vel + 1.0 / a, b1 * one], axis=-1),
            ],
            axis=-2,
        )
        return lam, R, L

    # -- Roe average ------------------------------------------------------
    def roe_average(self, ul, ur):
        self.check_admissible(ul, "Roe average left state")
        self.check_admissible(ur, "Roe average right state")
        rl, vl, pl = self.primitive(ul)
        rr, vr, pr = self.primitive(ur)
        sl, sr = np.sqrt(rl), np.sqrt(rr)
        sbar = 0.5 * (sl + sr)
        rho = sbar**2
        vel = (sl * vl + sr * vr) / (sl + sr)
        Hl = (ul[..., 2] + pl) / rl
        Hr = (ur[..., 2] + pr) / rr
        H = (sl * Hl + sr * Hr) / (sl + sr)
        a2 = (self.gamma - 1.0) * (H - 0.5 * vel**2)
        if not np.all(a2 > 0.0):
            raise InadmissibleState("Roe average has nonpositive sound speed squared")
        pres = (self.gamma - 1.0) / self.gamma * (rho * H - 0.5 * rho * vel**2)
        ene = rho * H - pres
        return RoeState(rho, vel, H, np.sqrt(a2), pres, ene)


class Euler2D(EquationModel):
    name = "euler2d"
    mach_kind = "euler"
    ncomp = 4
    dim = 2
    momentum_components = (1, 2)
    is_system = True

    def __init__(self, gamma=1.4):
        self.gamma = gamma

    def primitive(self, u):
        rho = u[..., 0]
        vx = u[..., 1] / rho
        vy = u[..., 2] / rho
        pres = (self.gamma - 1.0) * (u[..., 3] - 0.5 * rho * (vx**2 + vy**2))
        return rho, vx, vy, pres

    def conservative(self, rho, vx, vy, pres):
        rho = np.asarray(rho, dtype=float)
        e = pres / (self.gamma - 1.0) + 0.5 * rho * (vx**2 + vy**2)
        return np.stack(np.broadcast_arrays(rho, rho * vx, rho * vy, e), axis=-1)

    def sound_speed(self, u):
        rho, _, _, pres = self.primitive(u)
        return np.sqrt(self.gamma * pres / rho)

    def enthalpy(self, u):
        _, _, _, pres = self.primitive(u)
        return (u[..., 3] + pres) / u[..., 0]

    def check_admissible(self, u, context=""):
        if not np.all(self.admissible_mask(u)):
            raise InadmissibleState(
                f"nonpositive density or pressure{_format_context(context)}"
            )

    def admissible_mask(self, u):
        rho, _, _, pres = self.primitive(u)
        return (rho > 0.0) & (pres > 0.0) & np.all(np.isfinite(u), axis=-1)

    def flux_xy(self, u, x=None, y=None, t=0.0):
        rho, vx, vy, pres = self.primitive(u)
        e = u[..., 3]
        F = np.stack(
            [u[..., 1], u[..., 1] * vx + pres, u[..., 2] * vx, vx * (e + pres)], axis=-1
        )
        G = np.stack(
            [u[..., 2], u[..., 1] * vy, u[..., 2] * vy + pres, vy * (e + pres)], axis=-1
        )
        return F, G

    def normal_flux(self, u, n):
        F, G = self.flux_xy(u)
        return n[0] * F + n[1] * G

    def max_wavespeed(self, u, x=None, t=0.0):
        _, vx, vy, _ = self.primitive(u)
        a = self.sound_speed(u)
        return np.stack([np.abs(vx) + a, np.abs(vy) + a], axis=-1)

    def eigenstructure_n(self, u, n):
        """Eigenstructure of the normal Jacobian, order (qn, qn, qn-a, qn+a)."""
        nx, ny = n
        rho, vx, vy, _ = self.primitive(u)
        a = self.sound_speed(u)
        H = self.enthalpy(u)
        qn = vx * nx + vy * ny
        qt = -vx * ny + vy * nx
        q2 = vx**2 + vy**2
        lam = np.stack([qn, qn, qn - a, qn + a], axis=-1)

        one = np.ones_like(qn)
        zero = np.zeros_like(qn)
        R = np.stack(
            [
                np.stack([one, zero, one, one], axis=-1),
                np.stack([vx, -ny * one, vx - a * nx, vx + a * nx], axis=-1),
                np.stack([vy, nx * one, vy - a * ny, vy + a * ny], axis=-1),
                np.stack([0.5 * q2, qt, H - a * qn, H + a * qn], axis=-1),
            ],
            axis=-2,
        )
        b1 = (self.gamma - 1.0) / a**2
        b2 = 0.5 * b1 * q2
        L = np.stack(
            [
                np.stack([one - b2, b1 * vx, b1 * vy, -b1 * one], axis=-1),
                np.stack([-qt, -ny * one, nx * one, zero], axis=-1),
                0.5
                * np.stack(
                    [b2 + qn / a, -b1 * vx - nx / a, -b1 * vy - ny / a, b1 * one],
                    axis=-1,
                ),
                0.5
                * np.stack(
                    [b2 - qn / a, -b1 * vx + nx / a, -b1 * vy + ny / a, b1 * one],
                    axis=-1,
                ),
            ],
            axis=-2,
        )
        return lam, R, L

    def roe_average_n(self, u_int, u_ext, n):
        """Normal Roe average: returns (RoeState, (lam, Rn, Ln), |A_n|)."""
        self.check_admissible(u_int, "Roe average interior state")
        self.check_admissible(u_ext, "Roe average exterior state")
        rl, vxl, vyl, pl = self.primitive(u_int)
        rr, vxr, vyr, pr = self.primitive(u_ext)
        sl, sr = np.sqrt(rl), np.sqrt(rr)
        sbar = 0.5 * (sl + sr)
        rho = sbar**2
        vx = (sl * vxl + sr * vxr) / (sl + sr)
        vy = (sl * vyl + sr * vyr) / (sl + sr)
        Hl = (u_int[..., 3] + pl) / rl
        Hr = (u_ext[..., 3] + pr) / rr
        H = (sl * Hl + sr * Hr) / (sl + sr)
        a2 = (self.gamma - 1.0) * (H - 0.5 * (vx**2 + vy**2))
        if not np.all(a2 > 0.0):
            raise InadmissibleState("Roe average has nonpositive sound speed squared")
        pres = (self.gamma - 1.0) / self.gamma * (rho * H - 0.5 * rho * (vx**2 + vy**2))
        ene = rho * H - pres
        state = RoeState(rho, vx, H, np.sqrt(a2), pres, ene, v=vy)
        ubar = state.conservative()
        lam, R, L = self.eigenstructure_n(ubar, n)
        absA = np.einsum("...ik,...k,...kj->...ij", R, np.abs(lam), L)
        return state, (lam, R, L), absA
