"""Registry of the reference experiments (accuracy suites and Riemann problems).

Each case carries the model, domain, initial data, boundary conditions, final
time, an exact solution when one is available, and the reference run settings
(polynomial degree, mesh, CFL, flux, integrator, limiter). Every setting can
be overridden from the CLI. Cases suffixed -ci are desk-scale variants of
expensive reference setups and do not match the printed resolutions.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import exact_riemann
from .mesh import BoundaryKind, BoundarySpec
from .models import (
    Advection1D,
    Advection2D,
    BuckleyLeverett1D,
    Burgers1D,
    Burgers2D,
    Euler1D,
    Euler2D,
    SWE1D,
    SWE2D,
)
from .models import exact as exact_mod


@dataclass(frozen=True)
class CaseSpec:
    name: str
    description: str
    dim: int
    make_model: callable
    domain: tuple
    ic: callable              # conservative states from x (1D) or x, y (2D)
    bc: BoundarySpec
    t_end: float
    exact: callable = None    # conservative states from (x[, y], t)
    defaults: dict = dc_field(default_factory=dict)
    notes: str = ""


_REGISTRY = {}


def register(spec):
    _REGISTRY[spec.name] = spec
    return spec


def case_registry():
    return dict(_REGISTRY)


def get_case(name):
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown case {name!r}; known: {', '.join(sorted(_REGISTRY))}"
        ) from None


def _periodic():
    return BoundarySpec()


def _free():
    return BoundarySpec(*(BoundaryKind.FREE,) * 4)


def _reflective():
    return BoundarySpec(*(BoundaryKind.REFLECTIVE,) * 4)


# ---------------------------------------------------------------------------
# smooth accuracy cases
# ---------------------------------------------------------------------------

_euler1 = Euler1D()
register(CaseSpec(
    name="euler1d-smooth",
    description="1D Euler density wave: rho0 = 1 + 0.2 cos(pi x), u = -0.7, P = 1",
    dim=1,
    make_model=Euler1D,
    # the cosine profile has period 2; a length-2 domain keeps it periodic
    domain=(0.0, 2.0),
    ic=lambda x: exact_mod.euler1d_density_wave(x, 0.0),
    bc=_periodic(),
    t_end=1.0,
    exact=exact_mod.euler1d_density_wave,
    defaults=dict(K=2, N=40, cfl=0.1, flux="ausm", integrator="tvdrk3"),
))

register(CaseSpec(
    name="euler2d-smooth",
    description="2D Euler density wave on [0,2]x[-1,1], (u, v) = (-0.7, 0.3)",
    dim=2,
    make_model=Euler2D,
    domain=(0.0, 2.0, -1.0, 1.0),
    ic=lambda x, y: exact_mod.euler2d_density_wave(x, y, 0.0),
    bc=_periodic(),
    t_end=1.0,
    exact=exact_mod.euler2d_density_wave,
    defaults=dict(K=3, N=(10, 10), cfl=0.1, flux="ausm", integrator="rk4"),
))


def _swe_smooth_ic(x):
    h = 5.0 + np.exp(np.cos(2.0 * np.pi * x))
    u = np.sin(np.cos(2.0 * np.pi * x)) / h
    return np.stack([h, h * u], axis=-1)


def _swe_bed_slope(x):
    # z0 = sin^2(pi x)
    return np.pi * np.sin(2.0 * np.pi * x)


register(CaseSpec(
    name="swe1d-smooth",
    description="1D shallow water with bed z0 = sin^2(pi x); reference-mesh errors",
    dim=1,
    make_model=lambda: SWE1D(bed_slope=_swe_bed_slope),
    domain=(0.0, 1.0),
    ic=_swe_smooth_ic,
    bc=_periodic(),
    t_end=0.075,
    defaults=dict(K=2, N=100, cfl=0.1, flux="vanleer", integrator="tvdrk3"),
    notes="paper runs CFL 0.01; desk default 0.1",
))

register(CaseSpec(
    name="advection-sin-t",
    description="u_t + (sin(pi t) u)_x = 0, u0 = sin x, ten periods",
    dim=1,
    make_model=lambda: Advection1D(
        lambda x, t: np.sin(np.pi * t) * np.ones_like(np.asarray(x, dtype=float)),
        speed_floor=1.0,
    ),
    domain=(0.0, 2.0 * np.pi),
    ic=lambda x: np.sin(x)[..., None],
    bc=_periodic(),
    t_end=20.0,
    exact=lambda x, t: exact_mod.advection_sin_t(x, t)[..., None],
    defaults=dict(K=2, N=80, cfl=0.1, flux="scalar-sw", integrator="tvdrk3"),
))

register(CaseSpec(
    name="advection-sin-x",
    description="u_t + (sin(x) u)_x = 0, u0 = 1",
    dim=1,
    make_model=lambda: Advection1D(lambda x, t: np.sin(np.asarray(x, dtype=float))),
    domain=(0.0, 2.0 * np.pi),
    ic=lambda x: np.ones_like(x)[..., None],
    bc=_periodic(),
    t_end=1.0,
    exact=lambda x, t: exact_mod.advection_sin_x(x, t)[..., None],
    defaults=dict(K=5, N=40, cfl=0.05, flux="scalar-sw", integrator="rk4"),
))

register(CaseSpec(
    name="burgers1d-sin",
    description="Burgers, u0 = sin x on [0, 2pi]; shock forms at t = 1, x = pi",
    dim=1,
    make_model=Burgers1D,
    domain=(0.0, 2.0 * np.pi),
    ic=lambda x: np.sin(x)[..., None],
    bc=_periodic(),
    t_end=2.0,
    exact=lambda x, t: exact_mod.burgers1d_sin(x, t)[..., None],
    defaults=dict(K=3, N=20, cfl=0.1, flux="scalar-llf", integrator="tvdrk3",
                  limiter="istvb", indicator="always", tvb_m=1.0),
))

register(CaseSpec(
    name="burgers1d-smooth",
    description="Burgers accuracy window, u0 = sin x, t_end = 0.6 (pre-shock)",
    dim=1,
    make_model=Burgers1D,
    domain=(0.0, 2.0 * np.pi),
    ic=lambda x: np.sin(x)[..., None],
    bc=_periodic(),
    t_end=0.6,
    exact=lambda x, t: exact_mod.burgers1d_sin(x, t)[..., None],
    defaults=dict(K=5, N=40, cfl=0.05, flux="scalar-sw", integrator="rk4"),
))

register(CaseSpec(
    name="burgers2d-smooth",
    description="2D Burgers, U0 = sin(pi (x+y)/2), smooth until t = 1/pi",
    dim=2,
    make_model=Burgers2D,
    domain=(0.0, 4.0, 0.0, 4.0),
    ic=lambda x, y: exact_mod.burgers2d_sin(x, y, 0.0)[..., None],
    bc=_periodic(),
    t_end=0.5 / np.pi,
    exact=lambda x, y, t: exact_mod.burgers2d_sin(x, y, t)[..., None],
    defaults=dict(K=2, N=(30, 30), cfl=0.05, flux="scalar-sw", integrator="tvdrk3"),
))


def _burgers2d_riemann_ic(x, y):
    u = np.where(
        y < 0.05,
        np.where(x < 0.05, 0.5, 0.8),
        np.where(x < 0.05, -0.2, -1.0),
    )
    return u[..., None]


register(CaseSpec(
    name="burgers2d-riemann",
    description="2D Burgers with four-quadrant discontinuous data",
    dim=2,
    make_model=Burgers2D,
    domain=(0.0, 0.1, 0.0, 0.1),
    ic=_burgers2d_riemann_ic,
    bc=_free(),
    t_end=0.05,
    defaults=dict(K=3, N=(50, 50), cfl=0.1, flux="scalar-sw", integrator="tvdrk3",
                  limiter="istvb", indicator="tvb", tvb_m=1.0),
))

register(CaseSpec(
    name="buckley-leverett",
    description="Non-convex Buckley-Leverett, box initial data, global L-F alpha = 2.4",
    dim=1,
    make_model=BuckleyLeverett1D,
    domain=(-1.0, 1.0),
    ic=lambda x: np.where((x >= -0.5) & (x <= 0.0), 1.0, 0.0)[..., None],
    bc=_periodic(),
    t_end=0.4,
    defaults=dict(K=3, N=80, cfl=0.1, flux="scalar-llf", llf_mode="global",
                  llf_alpha=2.4, integrator="tvdrk3", limiter="istvb",
                  indicator="tvb", tvb_m=1.0),
))


# ---------------------------------------------------------------------------
# swirling deformation flow
# ---------------------------------------------------------------------------

_SWIRL_PERIOD = 0.75


def _swirl_g(t):
    return 2.0 * np.pi * np.cos(np.pi * t / _SWIRL_PERIOD)


def _swirl_alpha(x, y, t):
    return -np.cos(0.5 * x) ** 2 * np.sin(y) * _swirl_g(t)


def _swirl_beta(x, y, t):
    return np.sin(x) * np.cos(0.5 * y) ** 2 * _swirl_g(t)


def swirl_initial_profile(x, y):
    """Slotted disk, cone and smooth hump on [-pi, pi]^2 (unit-square layout)."""
    # map to the unit square where the classic profile is defined
    u = (np.asarray(x) + np.pi) / (2.0 * np.pi)
    v = (np.asarray(y) + np.pi) / (2.0 * np.pi)
    r0 = 0.15
    out = np.zeros_like(u)

    r = np.hypot(u - 0.5, v - 0.75)
    slot = (np.abs(u - 0.5) < 0.025) & (v < 0.85)
    out = np.where((r <= r0) & ~slot, 1.0, out)

    r = np.hypot(u - 0.5, v - 0.25)
    out = np.where(r <= r0, np.maximum(out, 1.0 - r / r0), out)

    r = np.hypot(u - 0.25, v - 0.5)
    hump = 0.25 * (1.0 + np.cos(np.pi * np.minimum(r / r0, 1.0)))
    out = np.where(r <= r0, np.maximum(out, hump), out)
    return out


register(CaseSpec(
    name="swirl-deform",
    description="Swirling deformation flow, period T = 0.75, returns to the initial data",
    dim=2,
    make_model=lambda: Advection2D(_swirl_alpha, _swirl_beta, speed_floor=2.0 * np.pi),
    domain=(-np.pi, np.pi, -np.pi, np.pi),
    ic=lambda x, y: swirl_initial_profile(x, y)[..., None],
    bc=_periodic(),
    t_end=_SWIRL_PERIOD,
    defaults=dict(K=3, N=(120, 120), cfl=0.1, flux="scalar-sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.75, w_l2=0.25, indicator="tvb", tvb_m=1.0),
))

register(CaseSpec(
    name="swirl-deform-ci",
    description="Desk-scale swirling deformation (40x40); not the printed resolution",
    dim=2,
    make_model=lambda: Advection2D(_swirl_alpha, _swirl_beta, speed_floor=2.0 * np.pi),
    domain=(-np.pi, np.pi, -np.pi, np.pi),
    ic=lambda x, y: swirl_initial_profile(x, y)[..., None],
    bc=_periodic(),
    t_end=_SWIRL_PERIOD,
    defaults=dict(K=3, N=(40, 40), cfl=0.1, flux="scalar-sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.75, w_l2=0.25, indicator="tvb", tvb_m=1.0),
    notes="desk-scale variant, not paper-matching",
))


# ---------------------------------------------------------------------------
# 1D Euler / SWE Riemann problems
# ---------------------------------------------------------------------------

def _riemann_ic_1d(model, left, right, split=0.0):
    def ic(x):
        prim = [np.where(x < split, l, r) for l, r in zip(left, right)]
        return model.conservative(*prim)

    return ic


def _riemann_exact_1d(left, right, split=0.0, gamma=1.4):
    def ex(x, t):
        if t <= 0.0:
            prim = [np.where(x < split, l, r) for l, r in zip(left, right)]
        else:
            prim = exact_riemann.solution(left, right, x, t, x0=split, gamma=gamma)
        return _euler1.conservative(*prim)

    return ex


_SOD_L, _SOD_R = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
register(CaseSpec(
    name="sod",
    description="Sod shock tube on [-1, 1], t_end = 0.2",
    dim=1,
    make_model=Euler1D,
    domain=(-1.0, 1.0),
    ic=_riemann_ic_1d(_euler1, _SOD_L, _SOD_R),
    bc=_free(),
    t_end=0.2,
    exact=_riemann_exact_1d(_SOD_L, _SOD_R),
    defaults=dict(K=3, N=400, cfl=0.05, flux="sw", integrator="tvdrk3",
                  limiter="istvb", indicator="tvb", tvb_m=1.0,
                  characteristic=True, freeze="roe"),
))

_LAX_L, _LAX_R = (0.445, 0.698, 3.528), (0.5, 0.0, 0.571)
_lax_common = dict(
    dim=1,
    make_model=Euler1D,
    domain=(-5.0, 5.0),
    ic=_riemann_ic_1d(_euler1, _LAX_L, _LAX_R),
    bc=_free(),
    t_end=1.3,
    exact=_riemann_exact_1d(_LAX_L, _LAX_R),
)
register(CaseSpec(
    name="lax",
    description="Lax shock tube, reference resolution N = 2000",
    defaults=dict(K=3, N=2000, cfl=0.1, flux="vanleer", integrator="tvdrk3",
                  limiter="istvb", indicator="tvb", tvb_m=1.0,
                  characteristic=True, freeze="roe"),
    **_lax_common,
))
register(CaseSpec(
    name="lax-ci",
    description="Lax shock tube at desk scale (N = 400)",
    defaults=dict(K=3, N=400, cfl=0.1, flux="vanleer", integrator="tvdrk3",
                  limiter="istvb", indicator="tvb", tvb_m=1.0,
                  characteristic=True, freeze="roe"),
    notes="desk-scale variant, not paper-matching",
    **_lax_common,
))


def _shu_osher_ic(x):
    rho = np.where(x < -4.0, 3.857143, 1.0 + 0.2 * np.sin(5.0 * x))
    u = np.where(x < -4.0, 2.629369, 0.0)
    p = np.where(x < -4.0, 10.333333, 1.0)
    return _euler1.conservative(rho, u, p)


_shu_common = dict(
    dim=1,
    make_model=Euler1D,
    domain=(-5.0, 5.0),
    ic=_shu_osher_ic,
    bc=_free(),
    t_end=1.8,
)
register(CaseSpec(
    name="shu-osher",
    description="Shu-Osher shock/entropy-wave interaction, N = 500, P5",
    defaults=dict(K=5, N=500, cfl=0.1, flux="sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.75, w_l2=0.25, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
    **_shu_common,
))
register(CaseSpec(
    name="shu-osher-ci",
    description="Shu-Osher at desk scale (N = 200, P3)",
    defaults=dict(K=3, N=200, cfl=0.1, flux="sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.75, w_l2=0.25, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
    notes="desk-scale variant, not paper-matching",
    **_shu_common,
))


def _blast_ic(x):
    rho = np.ones_like(x)
    u = np.zeros_like(x)
    p = np.where(x < 0.1, 1e3, np.where(x <= 0.9, 1e-2, 1e2))
    return _euler1.conservative(rho, u, p)


_blast_common = dict(
    dim=1,
    make_model=Euler1D,
    domain=(0.0, 1.0),
    ic=_blast_ic,
    bc=_reflective(),
    t_end=0.026,
)
register(CaseSpec(
    name="blast",
    description="Woodward-Colella interacting blast waves, N = 800",
    defaults=dict(K=2, N=800, cfl=0.005, flux="ausm", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.8, w_l2=0.2, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
    **_blast_common,
))
register(CaseSpec(
    name="blast-ci",
    description="Blast waves at desk scale (N = 200, CFL 0.02)",
    defaults=dict(K=2, N=200, cfl=0.02, flux="ausm", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.8, w_l2=0.2, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
    notes="desk-scale variant, not paper-matching",
    **_blast_common,
))

_swe1 = SWE1D()
register(CaseSpec(
    name="dambreak",
    description="Dam break on a flat bed, h = 1 / 0.1, t_end = 0.2",
    dim=1,
    make_model=SWE1D,
    domain=(-1.0, 1.0),
    ic=lambda x: _swe1.conservative(np.where(x < 0.0, 1.0, 0.1), 0.0 * x),
    bc=_free(),
    t_end=0.2,
    defaults=dict(K=4, N=200, cfl=0.1, flux="vanleer", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.75, w_l2=0.25, indicator="tvb",
                  tvb_m=0.0, characteristic=True, freeze="roe"),
))


# ---------------------------------------------------------------------------
# 2D Euler Riemann problems
# ---------------------------------------------------------------------------

_euler2 = Euler2D()


def _quadrant_ic(states, split):
    """states: (rho, u, v, p) for quadrants (++, -+, --, +-) about split point."""
    ne, nw, sw, se = states

    def ic(x, y):
        right = x > split[0]
        top = y > split[1]
        prim = []
        for k in range(4):
            prim.append(
                np.where(
                    top,
                    np.where(right, ne[k], nw[k]),
                    np.where(right, se[k], sw[k]),
                )
            )
        return _euler2.conservative(*prim)

    return ic


register(CaseSpec(
    name="riemann2d-1",
    description="2D Euler Riemann configuration 1 on [0,0.1]^2, t_end = 0.022",
    dim=2,
    make_model=Euler2D,
    domain=(0.0, 0.1, 0.0, 0.1),
    ic=_quadrant_ic(
        [
            (0.5313, 0.0, 0.0, 0.4),
            (1.0, 0.7276, 0.0, 1.0),
            (0.8, 0.0, 0.0, 1.0),
            (1.0, 0.0, 0.7276, 1.0),
        ],
        (0.05, 0.05),
    ),
    bc=_free(),
    t_end=0.022,
    defaults=dict(K=3, N=(40, 40), cfl=0.2, flux="sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.8, w_l2=0.2, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
))

register(CaseSpec(
    name="riemann2d-2",
    description="2D Euler Riemann configuration 2 on [0,1]^2, t_end = 0.25",
    dim=2,
    make_model=Euler2D,
    domain=(0.0, 1.0, 0.0, 1.0),
    ic=_quadrant_ic(
        [
            (1.1, 0.0, 0.0, 1.1),
            (0.5065, 0.8939, 0.0, 0.35),
            (1.1, 0.8939, 0.8939, 1.1),
            (0.5065, 0.0, 0.8939, 0.35),
        ],
        (0.5, 0.5),
    ),
    bc=_free(),
    t_end=0.25,
    defaults=dict(K=2, N=(100, 100), cfl=0.2, flux="ausm", integrator="tvdrk3",
                  limiter="istvb", indicator="tvb", tvb_m=1.0,
                  characteristic=True, freeze="roe"),
))

register(CaseSpec(
    name="riemann2d-3",
    description="2D Euler Riemann configuration 3 on [0,1]^2, t_end = 0.3",
    dim=2,
    make_model=Euler2D,
    domain=(0.0, 1.0, 0.0, 1.0),
    ic=_quadrant_ic(
        [
            (0.5313, 0.0, 0.0, 0.4),
            (1.0, 0.7276, 0.0, 1.0),
            (0.8, 0.0, 0.0, 1.0),
            (1.0, 0.0, 0.7276, 1.0),
        ],
        (0.5, 0.5),
    ),
    bc=_free(),
    t_end=0.3,
    defaults=dict(K=2, N=(100, 100), cfl=0.2, flux="sw", integrator="tvdrk3",
                  limiter="isl2tvb", w_is=0.8, w_l2=0.2, indicator="tvb",
                  tvb_m=1.0, characteristic=True, freeze="roe"),
))
