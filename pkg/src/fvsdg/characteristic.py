"""Local characteristic decomposition for system limiting.

Transform matrices are frozen per shared interface at the average (arithmetic
or Roe) of the two sides' edge integral means; cell polynomials map to
characteristic variables through the moment transform B = L A (equivalently
the interpolation transform when all components share one basis), get limited
componentwise there, and map back through R. A troubled cell's final
polynomial averages the per-edge candidates with uniform weights.
"""

import numpy as np

from .mesh import BoundaryKind
from .models.base import InadmissibleState


def moment_transform(A, L):
    """Characteristic modal matrix B = L A (components down the rows)."""
    return L @ A


def inverse_moment_transform(B, R):
    return R @ B


def interp_transform(A, L, P):
    """Interpolation-based transform: sample, rotate, refit.

    P[q, k] = phi_k(x_q) with as many distinct points as modes; equals the
    moment transform whenever all components share the basis.
    """
    P = np.asarray(P, dtype=float)
    if P.shape[0] != P.shape[1]:
        raise ValueError("sample count must equal the mode count")
    Y = A @ P.T
    Yt = L @ Y
    try:
        return np.linalg.solve(P, Yt.T).T
    except np.linalg.LinAlgError:
        raise ValueError("invalid sample set: singular sampling matrix") from None


def default_sample_points(basis, center, width):
    """Gauss-Legendre nodes of the cell; guarantees a nonsingular fit."""
    from .quadrature import gauss_rule

    return center + width * gauss_rule(basis.nmodes).points


def _substitute_bad(model, ua, ub, fallback):
    """Replace inadmissible interface pairs by the fallback state pointwise.

    Roe averaging of two identical states reduces to that state, so bad points
    end up frozen at the fallback exactly; returns (ua, ub, n_bad).
    """
    bad = ~(model.admissible_mask(ua) & model.admissible_mask(ub))
    nbad = int(np.count_nonzero(bad))
    if nbad:
        alt = fallback if fallback is not None else 0.5 * (ua + ub)
        ua = np.where(bad[..., None], alt, ua)
        ub = np.where(bad[..., None], alt, ub)
    return ua, ub, nbad


def freeze_pair_1d(model, ua, ub, kind, fallback=None):
    """Frozen state at a shared interface from the two side traces.

    Roe averaging falls back to `fallback` (arithmetic average of cell means)
    pointwise where a side state or the averaged state is inadmissible;
    returns (state, n_fallbacks).
    """
    if kind == "roe":
        ua, ub, nbad = _substitute_bad(model, ua, ub, fallback)
        try:
            rs = model.roe_average(ua, ub)
            return (rs.conservative() if hasattr(rs, "conservative") else rs), nbad
        except InadmissibleState:
            alt = fallback if fallback is not None else 0.5 * (ua + ub)
            return alt, int(np.prod(ua.shape[:-1]))
    return 0.5 * (ua + ub), 0


def _frozen_eig_2d(model, ua, ub, n, kind, fallback=None):
    if kind == "roe":
        ua, ub, nbad = _substitute_bad(model, ua, ub, fallback)
        try:
            _, eig, _ = model.roe_average_n(ua, ub, n)
            return eig, nbad
        except InadmissibleState:
            alt = fallback if fallback is not None else 0.5 * (ua + ub)
            return model.eigenstructure_n(alt, n), int(np.prod(ua.shape[:-1]))
    return model.eigenstructure_n(0.5 * (ua + ub), n), 0


# ---------------------------------------------------------------------------
# batched characteristic limiting drivers (called by limiters.Limiter)
# ---------------------------------------------------------------------------

def limit_cells_characteristic_1d(lim, coeffs, cells, means_pad, t):
    """Limit the flagged cells edge by edge in characteristic variables."""
    from .limiters import minmod

    op, model, cfg = lim.op, lim.model, lim.config
    sl, sr = op.interface_states(coeffs)
    if op.bc.left is not BoundaryKind.PERIODIC:
        sl = sl.copy()
        sr = sr.copy()
        sl[0] = sr[0]          # boundary freeze uses the interior trace only
        sr[-1] = sl[-1]
    A = coeffs[cells]  # (n, m, M)
    n, m, M = A.shape
    dx = op.mesh.dx
    out = np.zeros_like(A)
    for side in (0, 1):
        iface = cells + side
        fallback = 0.5 * (means_pad[cells + 1] + means_pad[cells + 2 * side])
        frozen, nfb = freeze_pair_1d(model, sl[iface], sr[iface], cfg.freeze, fallback)
        lim.freeze_fallbacks += nfb
        _, R, L = model.eigenstructure(frozen)
        B = np.einsum("nij,njm->nim", L, A)
        mprev = np.einsum("nij,nj->ni", L, means_pad[cells])
        mself = np.einsum("nij,nj->ni", L, means_pad[cells + 1])
        mnext = np.einsum("nij,nj->ni", L, means_pad[cells + 2])
        tr_left = op.s * np.einsum("nim,m->ni", B, op.pL)
        tr_right = op.s * np.einsum("nim,m->ni", B, op.pR)
        uhat = mself - tr_left
        util = tr_right - mself
        dminus = mself - mprev
        dplus = mnext - mself
        uhat_mod = minmod(np.stack([uhat, dminus, dplus], axis=-1), cfg.tvb_m, dx)
        util_mod = minmod(np.stack([util, dminus, dplus], axis=-1), cfg.tvb_m, dx)
        targets = np.stack([mself - uhat_mod, mself + util_mod], axis=-1)
        sol = lim._solve_1d(
            B[..., 1:].reshape(n * m, -1),
            B[..., 0].reshape(n * m),
            targets.reshape(n * m, 2),
            util_mod.reshape(n * m),
        )
        Bmod = B.copy()
        Bmod[..., 1:] = sol.reshape(n, m, M - 1)
        out += 0.5 * np.einsum("nij,njm->nim", R, Bmod)
    return out


def limit_cells_characteristic_2d(lim, coeffs, idx, means, nbrs, t):
    from .limiters import tvb_corrections_2d

    op, model, cfg = lim.op, lim.model, lim.config
    ix, iy = idx
    A = coeffs[ix, iy]  # (n, m, M)
    n, m, M = A.shape
    G = lim.gamma_rows  # (4, nmodes) L/R/B/T edge-mean rows
    mesh = op.mesh
    h = max(mesh.dx, mesh.dy)

    own_edge = np.einsum("xyim,em->xyei", coeffs, G)  # (nx, ny, 4, m)
    nbr_edge = _neighbor_edge_means(own_edge, op.bc)
    W, E, S, N = nbrs
    nbr_means = (W[ix, iy], E[ix, iy], S[ix, iy], N[ix, iy])
    self_mean = means[ix, iy]

    normals = ((-1.0, 0.0), (1.0, 0.0), (0.0, -1.0), (0.0, 1.0))
    out = np.zeros_like(A)
    for e, nrm in enumerate(normals):
        ua = own_edge[ix, iy, e]
        ub = nbr_edge[ix, iy, e]
        fallback = 0.5 * (self_mean + nbr_means[e])
        (lam, R, L), nfb = _frozen_eig_2d(model, ua, ub, nrm, cfg.freeze, fallback)
        lim.freeze_fallbacks += nfb
        B = np.einsum("nij,njm->nim", L, A)
        cm = np.einsum("nij,nj->ni", L, self_mean)
        cw = np.einsum("nij,nj->ni", L, nbr_means[0])
        ce = np.einsum("nij,nj->ni", L, nbr_means[1])
        cs = np.einsum("nij,nj->ni", L, nbr_means[2])
        cn = np.einsum("nij,nj->ni", L, nbr_means[3])
        char_edges = np.einsum("nim,em->nie", B, G)
        _, targets = tvb_corrections_2d(cm, (cw, ce, cs, cn), char_edges, cfg.tvb_m, h)
        sol = lim.solver.solve(
            B[..., 1:].reshape(n * m, -1),
            B[..., 0].reshape(n * m),
            targets.reshape(n * m, 4),
        )
        Bmod = B.copy()
        Bmod[..., 1:] = sol.reshape(n, m, M - 1)
        out += 0.25 * np.einsum("nij,njm->nim", R, Bmod)
    return out


def _neighbor_edge_means(own_edge, bc):
    """For each cell/edge, the adjacent cell's mean on the shared edge.

    own_edge is (nx, ny, 4, m) with rows L/R/B/T; a west neighbor contributes
    its east-edge mean, etc. Non-periodic boundaries reuse the interior value
    (boundary freezing uses the interior edge mean only).
    """
    out = np.empty_like(own_edge)
    out[1:, :, 0] = own_edge[:-1, :, 1]
    out[:-1, :, 1] = own_edge[1:, :, 0]
    out[:, 1:, 2] = own_edge[:, :-1, 3]
    out[:, :-1, 3] = own_edge[:, 1:, 2]
    if bc.left is BoundaryKind.PERIODIC:
        out[0, :, 0] = own_edge[-1, :, 1]
        out[-1, :, 1] = own_edge[0, :, 0]
    else:
        out[0, :, 0] = own_edge[0, :, 0]
        out[-1, :, 1] = own_edge[-1, :, 1]
    if bc.bottom is BoundaryKind.PERIODIC:
        out[:, 0, 2] = own_edge[:, -1, 3]
        out[:, -1, 3] = own_edge[:, 0, 2]
    else:
        out[:, 0, 2] = own_edge[:, 0, 2]
        out[:, -1, 3] = own_edge[:, -1, 3]
    return out
