"""Exact Riemann solver for the 1D Euler equations.

Independent reference used to validate shock-tube runs: Newton iteration on
the star-region pressure with two-rarefaction initialization, then similarity
sampling of the full wave fan. Not part of the DG discretization path.
"""

import numpy as np


def _f_side(p, rho_k, p_k, a_k, gamma):
    """Pressure function and derivative for one side of the contact."""
    if p > p_k:  # shock
        A = 2.0 / ((gamma + 1.0) * rho_k)
        B = (gamma - 1.0) / (gamma + 1.0) * p_k
        root = np.sqrt(A / (p + B))
        f = (p - p_k) * root
        df = root * (1.0 - 0.5 * (p - p_k) / (B + p))
    else:  # rarefaction
        f = (
            2.0
            * a_k
            / (gamma - 1.0)
            * ((p / p_k) ** ((gamma - 1.0) / (2.0 * gamma)) - 1.0)
        )
        df = 1.0 / (rho_k * a_k) * (p / p_k) ** (-(gamma + 1.0) / (2.0 * gamma))
    return f, df


def solve_star(left, right, gamma=1.4, tol=1e-12, max_iter=100):
    """Star-region (p*, u*) for primitive states (rho, u, P)."""
    rho_l, u_l, p_l = left
    rho_r, u_r, p_r = right
    a_l = np.sqrt(gamma * p_l / rho_l)
    a_r = np.sqrt(gamma * p_r / rho_r)
    du = u_r - u_l
    if 2.0 * (a_l + a_r) / (gamma - 1.0) <= du:
        raise ValueError("initial states generate vacuum")

    # two-rarefaction guess, floored away from zero
    z = (gamma - 1.0) / (2.0 * gamma)
    p = ((a_l + a_r - 0.5 * (gamma - 1.0) * du) / (a_l / p_l**z + a_r / p_r**z)) ** (
        1.0 / z
    )
    p = max(p, 1e-12)
    for _ in range(max_iter):
        f_l, df_l = _f_side(p, rho_l, p_l, a_l, gamma)
        f_r, df_r = _f_side(p, rho_r, p_r, a_r, gamma)
        g = f_l + f_r + du
        dp = g / (df_l + df_r)
        p_new = p - dp
        if p_new <= 0.0:
            p_new = 0.5 * p
        if abs(p_new - p) < tol * max(1.0, p):
            p = p_new
            break
        p = p_new
    f_l, _ = _f_side(p, rho_l, p_l, a_l, gamma)
    f_r, _ = _f_side(p, rho_r, p_r, a_r, gamma)
    u = 0.5 * (u_l + u_r) + 0.5 * (f_r - f_l)
    return p, u


def sample(left, right, xi, gamma=1.4):
    """Primitive (rho, u, P) at similarity coordinates xi = x/t (vectorized)."""
    rho_l, u_l, p_l = left
    rho_r, u_r, p_r = right
    a_l = np.sqrt(gamma * p_l / rho_l)
    a_r = np.sqrt(gamma * p_r / rho_r)
    ps, us = solve_star(left, right, gamma)
    xi = np.asarray(xi, dtype=float)
    rho = np.empty_like(xi)
    u = np.empty_like(xi)
    p = np.empty_like(xi)

    gm1, gp1 = gamma - 1.0, gamma + 1.0
    left_of_contact = xi <= us

    # left wave
    if ps > p_l:  # left shock
        s_l = u_l - a_l * np.sqrt(gp1 / (2 * gamma) * ps / p_l + gm1 / (2 * gamma))
        rho_star_l = rho_l * ((ps / p_l + gm1 / gp1) / (gm1 / gp1 * ps / p_l + 1.0))
        pre = xi < s_l
        rho = np.where(pre, rho_l, rho_star_l)
        u = np.where(pre, u_l, us)
        p = np.where(pre, p_l, ps)
    else:  # left rarefaction
        a_star_l = a_l * (ps / p_l) ** (gm1 / (2 * gamma))
        head, tail = u_l - a_l, us - a_star_l
        rho_star_l = rho_l * (ps / p_l) ** (1.0 / gamma)
        fan = 2.0 / gp1 + gm1 / (gp1 * a_l) * (u_l - xi)
        rho_fan = rho_l * fan ** (2.0 / gm1)
        u_fan = 2.0 / gp1 * (a_l + 0.5 * gm1 * u_l + xi)
        p_fan = p_l * fan ** (2.0 * gamma / gm1)
        rho = np.where(xi < head, rho_l, np.where(xi > tail, rho_star_l, rho_fan))
        u = np.where(xi < head, u_l, np.where(xi > tail, us, u_fan))
        p = np.where(xi < head, p_l, np.where(xi > tail, ps, p_fan))

    # right wave overwrites the right-of-contact part
    if ps > p_r:  # right shock
        s_r = u_r + a_r * np.sqrt(gp1 / (2 * gamma) * ps / p_r + gm1 / (2 * gamma))
        rho_star_r = rho_r * ((ps / p_r + gm1 / gp1) / (gm1 / gp1 * ps / p_r + 1.0))
        rho_r_side = np.where(xi > s_r, rho_r, rho_star_r)
        u_r_side = np.where(xi > s_r, u_r, us)
        p_r_side = np.where(xi > s_r, p_r, ps)
    else:  # right rarefaction
        a_star_r = a_r * (ps / p_r) ** (gm1 / (2 * gamma))
        head, tail = u_r + a_r, us + a_star_r
        rho_star_r = rho_r * (ps / p_r) ** (1.0 / gamma)
        fan = 2.0 / gp1 - gm1 / (gp1 * a_r) * (u_r - xi)
        rho_fan = rho_r * fan ** (2.0 / gm1)
        u_fan = 2.0 / gp1 * (-a_r + 0.5 * gm1 * u_r + xi)
        p_fan = p_r * fan ** (2.0 * gamma / gm1)
        rho_r_side = np.where(xi > head, rho_r, np.where(xi < tail, rho_star_r, rho_fan))
        u_r_side = np.where(xi > head, u_r, np.where(xi < tail, us, u_fan))
        p_r_side = np.where(xi > head, p_r, np.where(xi < tail, ps, p_fan))

    rho = np.where(left_of_contact, rho, rho_r_side)
    u = np.where(left_of_contact, u, u_r_side)
    p = np.where(left_of_contact, p, p_r_side)
    return rho, u, p


def solution(left, right, x, t, x0=0.0, gamma=1.4):
    """Primitive solution of the Riemann problem at positions x, time t > 0."""
    return sample(left, right, (np.asarray(x, dtype=float) - x0) / t, gamma)
