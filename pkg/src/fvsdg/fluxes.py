"""Numerical flux constructions.

Eigenvalue splittings (Steger-Warming, local/global Lax-Friedrichs) act on the
Jacobian eigenstructure of each side's own state: F_hat = A+(UL) UL + A-(UR) UR.
Mach-number splittings (van Leer, AUSM) split the normal Mach number; scalar
equations get the eigenvalue-split flux via the coefficient a = K f'(u) with
f = a u, plus the classical (local/global) Lax-Friedrichs flux.
"""

from dataclasses import dataclass

import numpy as np

from .models.base import InadmissibleState


class SchemeModelMismatch(TypeError):
    pass


class PositivityViolation(ValueError):
    """Global L-F bound smaller than an eigenvalue magnitude."""


# ---------------------------------------------------------------------------
# scheme descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StegerWarming:
    delta: float = 0.0


@dataclass(frozen=True)
class LaxFriedrichsLocal:
    pass


@dataclass(frozen=True)
class LaxFriedrichsGlobal:
    M: float = None  # None: recomputed from the current field's traces


@dataclass(frozen=True)
class VanLeer:
    pass


@dataclass(frozen=True)
class AUSM:
    pass


@dataclass(frozen=True)
class ScalarSW:
    delta: float = 0.0


@dataclass(frozen=True)
class ScalarLLF:
    mode: str = "local"  # "local" | "global"
    alpha: float = None


SCHEME_NAMES = {
    "sw": StegerWarming,
    "steger-warming": StegerWarming,
    "lf-local": LaxFriedrichsLocal,
    "llf": LaxFriedrichsLocal,
    "lf-global": LaxFriedrichsGlobal,
    "vanleer": VanLeer,
    "van-leer": VanLeer,
    "ausm": AUSM,
    "scalar-sw": ScalarSW,
    "scalar-llf": ScalarLLF,
}


def make_scheme(name, **kw):
    try:
        return SCHEME_NAMES[name.lower()](**kw)
    except KeyError:
        raise ValueError(f"unknown flux scheme {name!r}") from None


def validate_scheme(model, scheme):
    if isinstance(scheme, (StegerWarming, LaxFriedrichsLocal, LaxFriedrichsGlobal)):
        if not model.is_system:
            raise SchemeModelMismatch(
                f"{type(scheme).__name__} needs a system model with an eigenstructure; "
                f"use ScalarSW/ScalarLLF for {model.name}"
            )
    elif isinstance(scheme, (VanLeer, AUSM)):
        if getattr(model, "mach_kind", None) not in ("euler", "swe"):
            raise SchemeModelMismatch(
                f"{type(scheme).__name__} requires the Euler or shallow-water model"
            )
    elif isinstance(scheme, ScalarSW):
        if model.is_system or getattr(model, "a_coef", None) is None and getattr(
            model, "a_coef_n", None
        ) is None:
            raise SchemeModelMismatch(
                f"scalar Steger-Warming flux unsupported for {model.name}"
            )
    elif isinstance(scheme, ScalarLLF):
        if model.is_system:
            raise SchemeModelMismatch("scalar L-F flux requires a scalar model")
        if scheme.mode == "global" and scheme.alpha is None:
            raise ValueError("global scalar L-F flux needs a fixed alpha")
    else:
        raise SchemeModelMismatch(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# eigenvalue splittings
# ---------------------------------------------------------------------------

def split_eigen_sw(lam, delta=0.0):
    """Steger-Warming split: lam± = (lam ± |lam|)/2, smoothed by delta > 0."""
    lam = np.asarray(lam, dtype=float)
    mag = np.abs(lam) if delta == 0.0 else np.sqrt(lam * lam + delta * delta)
    return 0.5 * (lam + mag), 0.5 * (lam - mag)


def split_eigen_lf(lam, M):
    """Lax-Friedrichs split: lam± = (lam ± M)/2 with M >= max|lam|."""
    lam = np.asarray(lam, dtype=float)
    if np.any(np.abs(lam) > M):
        raise PositivityViolation(
            f"L-F bound M={M} below max|lambda|={np.max(np.abs(lam)):.6g}"
        )
    return 0.5 * (lam + M), 0.5 * (lam - M)


def _eig(model, u, n):
    if n is None:
        return model.eigenstructure(u)
    return model.eigenstructure_n(u, n)


def _split_side(model, scheme, u, n, sign, global_M):
    """R diag(lam^sign) L u for one side of the interface."""
    lam, R, L = _eig(model, u, n)
    if isinstance(scheme, StegerWarming):
        lp, lm = split_eigen_sw(lam, scheme.delta)
    elif isinstance(scheme, LaxFriedrichsLocal):
        M = np.max(np.abs(lam), axis=-1, keepdims=True)
        lp, lm = 0.5 * (lam + M), 0.5 * (lam - M)
    else:
        M = scheme.M if scheme.M is not None else global_M
        if M is None:
            raise ValueError("global L-F splitting needs M (fixed or per-step)")
        lp, lm = split_eigen_lf(lam, M)
    lam_part = lp if sign > 0 else lm
    w = np.einsum("...ij,...j->...i", L, u)
    return np.einsum("...ij,...j->...i", R, lam_part * w)


def jacobian_fvs_interface_flux(model, scheme, ul, ur, n=None, global_M=None):
    """F_hat = A+(UL) UL + A-(UR) UR (per quadrature point; n for 2D)."""
    model.check_admissible(ul, "interface left/interior state")
    model.check_admissible(ur, "interface right/exterior state")
    return _split_side(model, scheme, ul, n, +1, global_M) + _split_side(
        model, scheme, ur, n, -1, global_M
    )


# ---------------------------------------------------------------------------
# Mach-number splittings
# ---------------------------------------------------------------------------

def _mach_state(model, u, n):
    """(rho-like, sound, normal/tangential velocity, full velocity) for a state."""
    if model.mach_kind == "euler":
        if n is None:
            rho, vel, _ = model.primitive(u)
            return rho, model.sound_speed(u), vel, 0.0, (vel,)
        rho, vx, vy, _ = model.primitive(u)
        qn = vx * n[0] + vy * n[1]
        qt = -vx * n[1] + vy * n[0]
        return rho, model.sound_speed(u), qn, qt, (vx, vy)
    # shallow water: density role played by depth, true wave speed
    if n is None:
        h, vel = model.primitive(u)
        return h, model.sound_speed(u), vel, 0.0, (vel,)
    h, vx, vy = model.primitive(u)
    qn = vx * n[0] + vy * n[1]
    qt = -vx * n[1] + vy * n[0]
    return h, model.sound_speed(u), qn, qt, (vx, vy)


def _vanleer_onesided(model, u, n, sign):
    """F or F_n where the flow is supersonic in the sign direction."""
    if n is None:
        return model.flux(u)
    return model.normal_flux(u, n)


def vanleer_split(model, u, n=None):
    """(F+, F-) of the van Leer Mach splitting for one state."""
    gamma = model.gamma if model.mach_kind == "euler" else 2.0
    rho, a, qn, qt, vel = _mach_state(model, u, n)
    mach = qn / a
    full = _vanleer_onesided(model, u, n, +1)

    parts = []
    for sign in (+1.0, -1.0):
        mass = sign * 0.25 * rho * a * (mach + sign) ** 2
        momn = ((gamma - 1.0) * qn + sign * 2.0 * a) / gamma
        comps = [np.ones_like(mass)]
        if n is None:
            comps.append(momn)
        else:
            comps.append(momn * n[0] - qt * n[1])
            comps.append(momn * n[1] + qt * n[0])
        if model.mach_kind == "euler":
            ene = ((gamma - 1.0) * qn + sign * 2.0 * a) ** 2 / (
                2.0 * (gamma**2 - 1.0)
            ) + 0.5 * qt**2
            comps.append(ene)
        sub = mass[..., None] * np.stack(comps, axis=-1)
        if sign > 0:
            fp = np.where(
                (mach >= 1.0)[..., None],
                full,
                np.where((mach <= -1.0)[..., None], 0.0, sub),
            )
            parts.append(fp)
        else:
            fm = np.where(
                (mach <= -1.0)[..., None],
                full,
                np.where((mach >= 1.0)[..., None], 0.0, sub),
            )
            parts.append(fm)
    return parts[0], parts[1]


def vanleer_flux(model, ul, ur, n=None):
    model.check_admissible(ul, "van Leer left/interior state")
    model.check_admissible(ur, "van Leer right/exterior state")
    fp, _ = vanleer_split(model, ul, n)
    _, fm = vanleer_split(model, ur, n)
    return fp + fm


def mach_plus(m):
    return np.where(m > 1.0, m, np.where(m < -1.0, 0.0, 0.25 * (m + 1.0) ** 2))


def mach_minus(m):
    return np.where(m < -1.0, m, np.where(m > 1.0, 0.0, -0.25 * (m - 1.0) ** 2))


def pressure_plus(p, m):
    return np.where(m > 1.0, p, np.where(m < -1.0, 0.0, 0.5 * p * (1.0 + m)))


def pressure_minus(p, m):
    return np.where(m < -1.0, p, np.where(m > 1.0, 0.0, 0.5 * p * (1.0 - m)))


def _ausm_vectors(model, u, n):
    """Advection vector (1, u[, v][, H]) and pressure template for one state."""
    rho, a, qn, _, vel = _mach_state(model, u, n)
    comps = [np.ones_like(qn), *vel]
    if model.mach_kind == "euler":
        comps.append(model.enthalpy(u))
    adv = np.stack(comps, axis=-1)
    pvec = np.zeros(u.shape[-1])
    if n is None:
        pvec[1] = 1.0
    else:
        pvec[1], pvec[2] = n[0], n[1]
    if model.mach_kind == "euler":
        p = model.primitive(u)[-1]
    else:
        p = model.pressure(u)
    return rho, a, qn / a, adv, p, pvec


def ausm_split(model, u, n=None):
    """(F+, F-) of the Liou-Steffen advection/pressure splitting for one state."""
    rho, a, mach, adv, p, pvec = _ausm_vectors(model, u, n)
    ra = (rho * a)[..., None]
    fp = ra * mach_plus(mach)[..., None] * adv + pressure_plus(p, mach)[..., None] * pvec
    fm = ra * mach_minus(mach)[..., None] * adv + pressure_minus(p, mach)[..., None] * pvec
    return fp, fm


def ausm_flux(model, ul, ur, n=None):
    model.check_admissible(ul, "AUSM left/interior state")
    model.check_admissible(ur, "AUSM right/exterior state")
    fp, _ = ausm_split(model, ul, n)
    _, fm = ausm_split(model, ur, n)
    return fp + fm


# ---------------------------------------------------------------------------
# scalar fluxes
# ---------------------------------------------------------------------------

def _scalar_coef(model, u, x, y, t, n):
    if n is None:
        return model.a_coef(u, x, t)
    return model.a_coef_n(u, n, x, y, t)


def scalar_sw_flux(model, ul, ur, x=None, y=None, t=0.0, n=None, delta=0.0):
    """a+(uL) uL + a-(uR) uR with a = K f'(u); consistent and monotone."""
    al = _scalar_coef(model, ul, x, y, t, n)
    ar = _scalar_coef(model, ur, x, y, t, n)
    ap, _ = split_eigen_sw(al, delta)
    _, am = split_eigen_sw(ar, delta)
    return ap[..., None] * ul + am[..., None] * ur


def scalar_llf_flux(model, ul, ur, x=None, y=None, t=0.0, n=None, mode="local",
                    alpha=None):
    """Classical Lax-Friedrichs flux with a local or fixed-global viscosity."""
    if n is None:
        fl, fr = model.flux(ul, x, t), model.flux(ur, x, t)
    else:
        Fl, Gl = model.flux_xy(ul, x, y, t)
        Fr, Gr = model.flux_xy(ur, x, y, t)
        fl, fr = n[0] * Fl + n[1] * Gl, n[0] * Fr + n[1] * Gr
    if mode == "global":
        if alpha is None:
            raise ValueError("global scalar L-F flux needs alpha")
        a = alpha
    else:
        a = (
            model.llf_alpha(ul, ur, x, t)[..., None]
            if n is None
            else model.llf_alpha_n(ul, ur, n, x, y, t)[..., None]
        )
    return 0.5 * (fl + fr - a * (ur - ul))


# ---------------------------------------------------------------------------
# dispatch used by the DG assembly
# ---------------------------------------------------------------------------

def interface_flux(model, scheme, ul, ur, x=None, y=None, t=0.0, n=None,
                   global_M=None):
    if isinstance(scheme, (StegerWarming, LaxFriedrichsLocal, LaxFriedrichsGlobal)):
        return jacobian_fvs_interface_flux(model, scheme, ul, ur, n, global_M)
    if isinstance(scheme, VanLeer):
        return vanleer_flux(model, ul, ur, n)
    if isinstance(scheme, AUSM):
        return ausm_flux(model, ul, ur, n)
    if isinstance(scheme, ScalarSW):
        return scalar_sw_flux(model, ul, ur, x, y, t, n, scheme.delta)
    if isinstance(scheme, ScalarLLF):
        return scalar_llf_flux(model, ul, ur, x, y, t, n, scheme.mode, scheme.alpha)
    raise SchemeModelMismatch(f"unknown scheme {scheme!r}")


def needs_global_bound(scheme):
    return isinstance(scheme, LaxFriedrichsGlobal) and scheme.M is None
