"""Closed-form and characteristic-traced reference solutions for the test cases."""

import numpy as np

NEWTON_TOL = 1e-12
NEWTON_MAXIT = 50


def advection_sin_t(x, t, omega=np.pi):
    """u_t + (sin(omega t) u)_x = 0 with u0 = sin(x)."""
    shift = (np.cos(omega * t) - 1.0) / omega
    return np.sin(np.asarray(x) + shift)


def advection_sin_x(x, t):
    """u_t + (sin(x) u)_x = 0 with u0 = 1 on [0, 2pi].

    u = e^{-t} (1 + tan^2(x/2)) / (1 + e^{-2t} tan^2(x/2)), evaluated through
    cot near x = pi where tan blows up.
    """
    x = np.asarray(x, dtype=float)
    et = np.exp(-t)
    half = 0.5 * np.mod(x, 2.0 * np.pi)
    use_cot = np.abs(half - 0.5 * np.pi) < 0.25 * np.pi
    out = np.empty_like(x)
    tan2 = np.tan(np.where(use_cot, 0.0, half)) ** 2
    out[...] = et * (1.0 + tan2) / (1.0 + et**2 * tan2)
    cot2 = np.where(use_cot, np.tan(0.5 * np.pi - half), 1.0) ** 2
    out_cot = et * (cot2 + 1.0) / (cot2 + et**2)
    return np.where(use_cot, out_cot, out)


def _char_newton(g, dg, s0, target, lo, hi):
    """Solve g(s) = target on [lo, hi] by safeguarded Newton, bisection fallback."""
    s = np.clip(np.asarray(s0, dtype=float), lo, hi)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), s.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), s.shape).copy()
    target = np.broadcast_to(np.asarray(target, dtype=float), s.shape)
    for _ in range(NEWTON_MAXIT):
        r = g(s) - target
        lo = np.where(r < 0.0, np.maximum(lo, s), lo)
        hi = np.where(r > 0.0, np.minimum(hi, s), hi)
        if np.all(np.abs(r) < NEWTON_TOL):
            return s
        d = dg(s)
        step = np.where(np.abs(d) > 1e-14, r / np.where(d == 0.0, 1.0, d), np.inf)
        cand = s - step
        bad = ~np.isfinite(cand) | (cand <= lo) | (cand >= hi)
        s = np.where(bad, 0.5 * (lo + hi), cand)
    # bisection polish for any points Newton left unconverged
    for _ in range(200):
        r = g(s) - target
        if np.all(np.abs(r) < NEWTON_TOL):
            break
        lo = np.where(r < 0.0, s, lo)
        hi = np.where(r > 0.0, s, hi)
        s = 0.5 * (lo + hi)
    return s


def burgers_sine_wave(x, t, amplitude=1.0, wavenumber=1.0, speed_factor=1.0,
                      period=2.0 * np.pi):
    """Entropy solution of a Burgers-type equation with u0 = A sin(k x).

    Characteristics satisfy x* + c u0(x*) t = x with c = speed_factor. The
    profile is odd about period/2 where a stationary shock forms at
    t_s = 1/(c A k); past t_s the pre-shock branch is selected on each side.
    """
    x = np.asarray(x, dtype=float)
    L = period
    c = speed_factor
    u0 = lambda s: amplitude * np.sin(wavenumber * s)
    du0 = lambda s: amplitude * wavenumber * np.cos(wavenumber * s)
    g = lambda s: s + c * t * u0(s)
    dg = lambda s: 1.0 + c * t * du0(s)

    xm = np.mod(x, L)
    # fold onto [0, L/2] using odd symmetry about L/2
    mirrored = xm > 0.5 * L
    xf = np.where(mirrored, L - xm, xm)

    if c * t * amplitude * wavenumber < 1.0:
        s = _char_newton(g, dg, xf, xf, xf - c * t * amplitude, xf + c * t * amplitude)
    else:
        # monotone branch: [0, s_c] with g'(s_c) = 0
        sc = np.arccos(-1.0 / (c * t * amplitude * wavenumber)) / wavenumber
        s = _char_newton(g, dg, np.minimum(xf, sc), xf, np.zeros_like(xf), sc)
    u = u0(s)
    return np.where(mirrored, -u, u)


def burgers1d_sin(x, t):
    """u_t + (u^2/2)_x = 0, u0 = sin(x) on [0, 2pi] (shock at x = pi for t >= 1)."""
    return burgers_sine_wave(x, t)


def burgers2d_sin(x, y, t):
    """U_t + (U^2/2)_x + (U^2/2)_y = 0 with U0 = sin(pi (x+y)/2), via xi = x+y."""
    xi = np.asarray(x) + np.asarray(y)
    return burgers_sine_wave(xi, t, wavenumber=0.5 * np.pi, speed_factor=2.0, period=4.0)


def euler1d_density_wave(x, t, gamma=1.4):
    """rho = 1 + 0.2 cos(pi (x + 0.7 t)), u = -0.7, P = 1; conservative states."""
    x = np.asarray(x, dtype=float)
    rho = 1.0 + 0.2 * np.cos(np.pi * (x + 0.7 * t))
    u = np.full_like(rho, -0.7)
    e = 1.0 / (gamma - 1.0) + 0.5 * rho * u**2
    return np.stack([rho, rho * u, e], axis=-1)


def euler2d_density_wave(x, y, t, gamma=1.4):
    """rho = 1 + 0.2 cos(pi(x+0.7t) + pi(y-0.3t)), (u, v) = (-0.7, 0.3), P = 1."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = 1.0 + 0.2 * np.cos(np.pi * (x + 0.7 * t) + np.pi * (y - 0.3 * t))
    u = np.full_like(rho, -0.7)
    v = np.full_like(rho, 0.3)
    e = 1.0 / (gamma - 1.0) + 0.5 * rho * (u**2 + v**2)
    return np.stack([rho, rho * u, rho * v, e], axis=-1)
