"""Troubled-cell indicators and the constrained-optimization TVB(D)-minmod limiters.

Three limiters share one pipeline: the TVB(D)-minmod corrections produce target
boundary values (1D: two end values, 2D: four edge means); a troubled cell's
nonconstant modes are then either reconstructed classically (direct solve /
least squares) or by minimizing w_IS * IS(u) + w_L2 * ||u - u_old||^2 subject
to those targets, via the saddle-point (KKT) system. The cell mean alpha_0 is
held fixed everywhere.

On a uniform mesh every cell shares the same smoothness matrix, constraint
rows and saddle matrix, so all troubled cells/components are solved in one
batched linear solve.
"""

from dataclasses import dataclass

import numpy as np

from .basis import Basis1D
from .mesh import BoundaryKind
from .quadrature import gauss_rule, tensor_rule

CHANGE_TOL = 1e-13
ZERO_NORM_TOL = 1e-13

LIMITER_KINDS = ("none", "classical", "istvb", "isl2tvb")
INDICATORS = ("tvb", "kxrcf", "always")


@dataclass(frozen=True)
class LimiterConfig:
    kind: str = "none"
    w_is: float = 1.0
    w_l2: float = 0.0
    tvb_m: float = 0.0
    indicator: str = "tvb"
    characteristic: bool = False
    freeze: str = "arithmetic"  # or "roe"

    def __post_init__(self):
        if self.kind not in LIMITER_KINDS:
            raise ValueError(f"unknown limiter kind {self.kind!r}")
        if self.indicator not in INDICATORS:
            raise ValueError(f"unknown indicator {self.indicator!r}")
        if self.freeze not in ("arithmetic", "roe"):
            raise ValueError(f"unknown freeze average {self.freeze!r}")
        if self.kind in ("istvb", "isl2tvb"):
            if abs(self.w_is + self.w_l2 - 1.0) > 1e-12 or min(self.w_is, self.w_l2) < 0:
                raise ValueError("weights must be nonnegative with w_is + w_l2 = 1")
            if self.kind == "istvb" and self.w_l2 != 0.0:
                raise ValueError("istvb means (w_is, w_l2) = (1, 0); use isl2tvb otherwise")
        if self.tvb_m < 0:
            raise ValueError("TVB parameter M must be >= 0")


def minmod(values, tvb_m=0.0, dx=1.0):
    """TVB-relaxed minmod along the last axis; first entry is the limited one."""
    v = np.asarray(values, dtype=float)
    first = v[..., 0]
    signs = np.sign(v)
    common = np.all(signs == signs[..., :1], axis=-1) & (signs[..., 0] != 0.0)
    mm = np.where(common, signs[..., 0] * np.min(np.abs(v), axis=-1), 0.0)
    return np.where(np.abs(first) <= tvb_m * dx * dx, first, mm)


def _differs(a, b):
    return np.abs(a - b) > CHANGE_TOL * (1.0 + np.abs(b))


# ---------------------------------------------------------------------------
# smoothness (IS) matrices
# ---------------------------------------------------------------------------

def assemble_m_is_1d(basis, dx):
    """M_IS over nonconstant modes: entries 2 * sum_d dx^(2d-1) <phi_j^(d), phi_k^(d)>."""
    K = basis.degree
    rule = gauss_rule(K + 2)
    out = np.zeros((K + 1, K + 1))
    for d in range(1, K + 1):
        T = basis.ref_eval(rule.points, d)
        out += np.einsum("q,qj,qk->jk", rule.weights, T, T)
    return 2.0 * out[1:, 1:] / dx


def assemble_m_is_2d(basis, dx, dy):
    """2D analog with |cell|^(2|d|-1) weights, summed over all multi-indices."""
    K = basis.degree
    xi, eta, w = tensor_rule(K + 2)
    n = basis.nmodes
    out = np.zeros((n, n))
    for d1 in range(0, K + 1):
        for d2 in range(0, K + 1 - d1):
            if d1 + d2 == 0:
                continue
            T = basis.ref_eval(xi, eta, (d1, d2))
            scale = dx ** (2 * d2 - 1) * dy ** (2 * d1 - 1)
            out += scale * np.einsum("q,qj,qk->jk", w, T, T)
    return 2.0 * out[1:, 1:]


def smoothness_factor(m_is, a_nonconst):
    """IS(u) = 1/2 a~^T M_IS a~ for nonconstant modal coefficients a~."""
    return 0.5 * np.einsum("...j,jk,...k->...", a_nonconst, m_is, a_nonconst)


def edge_mean_rows(basis, dx, dy):
    """(4, nmodes) rows mapping modal coefficients to L/R/B/T edge means."""
    b1 = Basis1D(basis.degree)
    pm = b1.ref_eval(np.array([-0.5, 0.5]))  # (2, K+1)
    s = (dx * dy) ** -0.5
    rows = np.zeros((4, basis.nmodes))
    for k, (i, j) in enumerate(basis.modes):
        if j == 0:
            rows[0, k] = s * pm[0, i]  # left
            rows[1, k] = s * pm[1, i]  # right
        if i == 0:
            rows[2, k] = s * pm[0, j]  # bottom
            rows[3, k] = s * pm[1, j]  # top
    return rows


# ---------------------------------------------------------------------------
# per-cell reconstruction solvers (batched over cells x components)
# ---------------------------------------------------------------------------

class CellSolver:
    """Reconstructs nonconstant modes from boundary targets on a uniform mesh.

    `rows` is the (ncon, nmodes-1) constraint matrix over nonconstant modes and
    `mean_row` the (ncon,) contribution of the constant mode per unit alpha_0.
    """

    def __init__(self, m_is, rows, mean_row, config):
        self.rows = rows
        self.mean_row = mean_row
        self.config = config
        self.nnc = rows.shape[1]
        self.ncon = rows.shape[0]
        kind = config.kind
        if kind in ("istvb", "isl2tvb") and self.nnc > self.ncon - 1:
            quad = config.w_is * m_is + config.w_l2 * 2.0 * np.eye(self.nnc)
            A = np.zeros((self.nnc + self.ncon,) * 2)
            A[: self.nnc, : self.nnc] = quad
            A[: self.nnc, self.nnc:] = rows.T
            A[self.nnc:, : self.nnc] = rows
            self.saddle = A
            self.mode = "saddle"
        elif kind in ("istvb", "isl2tvb") or (kind == "classical" and self.nnc < self.ncon):
            # over-determined: fall back to the least-squares fit (1D K=1 uses
            # the classical minmod slope, handled by the caller)
            self.pinv = np.linalg.pinv(rows)
            self.mode = "lstsq"
        elif kind == "classical" and self.nnc == self.ncon:
            self.direct = np.linalg.inv(rows)
            self.mode = "direct"
        else:
            self.pinv = np.linalg.pinv(rows)
            self.mode = "lstsq"

    def solve(self, a_old, alpha0, targets):
        """a_old: (n, nnc) nonconstant modes; targets: (n, ncon). Returns (n, nnc)."""
        rhs_con = targets - alpha0[:, None] * self.mean_row[None, :]
        if self.mode == "saddle":
            b = np.zeros((self.nnc + self.ncon, len(a_old)))
            b[: self.nnc] = self.config.w_l2 * 2.0 * a_old.T
            b[self.nnc:] = rhs_con.T
            sol = np.linalg.solve(self.saddle, b)
            return sol[: self.nnc].T
        if self.mode == "direct":
            return rhs_con @ self.direct.T
        return rhs_con @ self.pinv.T


def _p1_slope_targets(util_mod, scale):
    """Classical P1 fallback: alpha_1 from the modified right deviation."""
    return util_mod * scale


# ---------------------------------------------------------------------------
# BC-resolved neighbor means
# ---------------------------------------------------------------------------

def _mirror(model, means, axis):
    out = means.copy()
    comp = model.momentum_components[axis]
    out[..., comp] = -out[..., comp]
    return out


def padded_means_1d(means, bc, model):
    n = means.shape[0]
    pad = np.empty((n + 2,) + means.shape[1:])
    pad[1:-1] = means
    if bc.left is BoundaryKind.PERIODIC:
        pad[0], pad[-1] = means[-1], means[0]
    else:
        pad[0] = means[0] if bc.left is BoundaryKind.FREE else _mirror(model, means[0], 0)
        pad[-1] = (
            means[-1] if bc.right is BoundaryKind.FREE else _mirror(model, means[-1], 0)
        )
    return pad


def neighbor_means_2d(means, bc, model):
    """Returns (W, E, S, N) neighbor-mean arrays, BC-resolved."""
    W = np.empty_like(means)
    E = np.empty_like(means)
    S = np.empty_like(means)
    N = np.empty_like(means)
    W[1:], E[:-1] = means[:-1], means[1:]
    S[:, 1:], N[:, :-1] = means[:, :-1], means[:, 1:]
    if bc.left is BoundaryKind.PERIODIC:
        W[0], E[-1] = means[-1], means[0]
    else:
        W[0] = means[0] if bc.left is BoundaryKind.FREE else _mirror(model, means[0], 0)
        E[-1] = means[-1] if bc.right is BoundaryKind.FREE else _mirror(
            model, means[-1], 0
        )
    if bc.bottom is BoundaryKind.PERIODIC:
        S[:, 0], N[:, -1] = means[:, -1], means[:, 0]
    else:
        S[:, 0] = means[:, 0] if bc.bottom is BoundaryKind.FREE else _mirror(
            model, means[:, 0], 1
        )
        N[:, -1] = means[:, -1] if bc.top is BoundaryKind.FREE else _mirror(
            model, means[:, -1], 1
        )
    return W, E, S, N


# ---------------------------------------------------------------------------
# TVB(D)-minmod indicator (1D/2D)
# ---------------------------------------------------------------------------

def tvb_corrections_1d(means_pad, tr_left, tr_right, tvb_m, dx):
    """Modified deviations, change mask and corrected end values per component."""
    ubar = means_pad[1:-1]
    dminus = ubar - means_pad[:-2]
    dplus = means_pad[2:] - ubar
    uhat = ubar - tr_left
    util = tr_right - ubar
    uhat_mod = minmod(np.stack([uhat, dminus, dplus], axis=-1), tvb_m, dx)
    util_mod = minmod(np.stack([util, dminus, dplus], axis=-1), tvb_m, dx)
    changed = _differs(uhat_mod, uhat) | _differs(util_mod, util)
    return changed, ubar - uhat_mod, ubar + util_mod, util_mod


def tvb_corrections_2d(means, nbrs, edge_means, tvb_m, h):
    """edge_means: (nx, ny, m, 4) L/R/B/T means of each cell's own polynomial."""
    W, E, S, N = nbrs
    dL = means - W
    dR = E - means
    dB = means - S
    dT = N - means
    uhatL = means - edge_means[..., 0]
    utilR = edge_means[..., 1] - means
    uhatB = means - edge_means[..., 2]
    utilT = edge_means[..., 3] - means
    modL = minmod(np.stack([uhatL, dL, dR], axis=-1), tvb_m, h)
    modR = minmod(np.stack([utilR, dL, dR], axis=-1), tvb_m, h)
    modB = minmod(np.stack([uhatB, dB, dT], axis=-1), tvb_m, h)
    modT = minmod(np.stack([utilT, dB, dT], axis=-1), tvb_m, h)
    changed = (
        _differs(modL, uhatL)
        | _differs(modR, utilR)
        | _differs(modB, uhatB)
        | _differs(modT, utilT)
    )
    targets = np.stack(
        [means - modL, means + modR, means - modB, means + modT], axis=-1
    )
    return changed, targets


# ---------------------------------------------------------------------------
# KXRCF indicator
# ---------------------------------------------------------------------------

def _kxrcf_flag(jump_over_len, boundary_len, h, degree, umax):
    scale = h ** (0.5 * (degree + 1))
    num = np.abs(jump_over_len)
    with np.errstate(divide="ignore", invalid="ignore"):
        J = num / (scale * boundary_len * umax)
    tiny = umax < ZERO_NORM_TOL
    flag = np.where(tiny, num > ZERO_NORM_TOL, J > 1.0)
    return flag & (boundary_len > 0.0)


def kxrcf_1d(op, coeffs, model, t, bc):
    """Per-component troubled flags on a 1D mesh."""
    mesh = op.mesh
    means = coeffs[..., 0] * op.s
    if model.is_system:
        vel = means[:, 1] / means[:, 0]
    else:
        vel = model.dflux(means, mesh.centers(), t)
    trL, trR = op.traces(coeffs)
    sl, sr = op.interface_states(coeffs)
    jump_left = trL - sl[:-1]   # u|cell - u|neighbor at the left face
    jump_right = trR - sr[1:]
    inflow_left = (vel > 0.0)[:, None]
    inflow_right = (vel < 0.0)[:, None]
    total = np.where(inflow_left, jump_left, 0.0) + np.where(
        inflow_right, jump_right, 0.0
    )
    count = inflow_left.astype(float) + inflow_right.astype(float)
    umax = np.max(np.abs(op.values_at_quad(coeffs)), axis=1)
    return _kxrcf_flag(total, count, 0.5 * mesh.dx, op.basis.degree, umax)


def kxrcf_2d(op, coeffs, model, t, bc):
    mesh = op.mesh
    means = coeffs[..., 0] * op.s
    if model.is_system:
        vx = means[..., 1] / means[..., 0]
        vy = means[..., 2] / means[..., 0]
    else:
        cx, cy = mesh.centers()
        vx, vy = model.dflux_xy(means, cx, cy, t)
    slx, srx = op._edge_states_x(coeffs)
    sly, sry = op._edge_states_y(coeffs)
    west = op.edge_values(coeffs, op.Wface)
    east = op.edge_values(coeffs, op.Eface)
    south = op.edge_values(coeffs, op.Sface)
    north = op.edge_values(coeffs, op.Nface)

    def edge_jump(inner, outer):
        return np.einsum("q,xyqi->xyi", op.we, inner - outer)

    jW = edge_jump(west, slx[:-1]) * mesh.dy
    jE = edge_jump(east, srx[1:]) * mesh.dy
    jS = edge_jump(south, sly[:, :-1]) * mesh.dx
    jN = edge_jump(north, sry[:, 1:]) * mesh.dx
    inW = (vx > 0.0)[..., None]
    inE = (vx < 0.0)[..., None]
    inS = (vy > 0.0)[..., None]
    inN = (vy < 0.0)[..., None]
    total = (
        np.where(inW, jW, 0.0)
        + np.where(inE, jE, 0.0)
        + np.where(inS, jS, 0.0)
        + np.where(inN, jN, 0.0)
    )
    length = (
        inW.astype(float) * mesh.dy
        + inE.astype(float) * mesh.dy
        + inS.astype(float) * mesh.dx
        + inN.astype(float) * mesh.dx
    )
    umax = np.max(np.abs(op.values_at_quad(coeffs)), axis=2)
    h = 0.5 * np.hypot(mesh.dx, mesh.dy)
    return _kxrcf_flag(total, length, h, op.basis.degree, umax)


# ---------------------------------------------------------------------------
# the limiter driver
# ---------------------------------------------------------------------------

class Limiter:
    """Indicator + limiting pass bound to one DG operator and config."""

    def __init__(self, op, config):
        self.op = op
        self.config = config
        self.model = op.model
        self.mesh = op.mesh
        self.basis = op.basis
        self.bc = op.bc
        self.freeze_fallbacks = 0
        K = op.basis.degree
        self.is_1d = not hasattr(op.mesh, "ny")
        if config.kind == "none" or K == 0:
            return
        if self.is_1d:
            dx = op.mesh.dx
            self.m_is = assemble_m_is_1d(op.basis, dx)
            rows = np.stack([op.pL[1:], op.pR[1:]]) * dx**-0.5  # (2, K)
            mean_row = np.array([op.pL[0], op.pR[0]]) * dx**-0.5
            self.solver = CellSolver(self.m_is, rows, mean_row, config)
            # classical P1 slope scale: alpha_1 = util_mod / phi_1(right face)
            self.p1_scale = 1.0 / (op.pR[1] * dx**-0.5)
        else:
            dx, dy = op.mesh.dx, op.mesh.dy
            self.m_is = assemble_m_is_2d(op.basis, dx, dy)
            gam = edge_mean_rows(op.basis, dx, dy)  # (4, nmodes)
            self.gamma_rows = gam
            self.solver = CellSolver(self.m_is, gam[:, 1:], gam[:, 0], config)

    # -- public entry ----------------------------------------------------
    def apply(self, coeffs, t):
        cfg = self.config
        if cfg.kind == "none" or self.basis.degree == 0:
            return coeffs, None
        if self.is_1d:
            return self._apply_1d(coeffs, t)
        return self._apply_2d(coeffs, t)

    # -- 1D ---------------------------------------------------------------
    def _apply_1d(self, coeffs, t):
        cfg, op = self.config, self.op
        means = coeffs[..., 0] * op.s
        means_pad = padded_means_1d(means, self.bc, self.model)
        trL, trR = op.traces(coeffs)
        changed, up, um, util_mod = tvb_corrections_1d(
            means_pad, trL, trR, cfg.tvb_m, self.mesh.dx
        )
        if cfg.indicator == "tvb":
            mask = changed
        elif cfg.indicator == "always":
            mask = np.ones_like(changed)
        else:
            mask = kxrcf_1d(op, coeffs, self.model, t, self.bc)
        if not mask.any():
            return coeffs, mask

        out = coeffs.copy()
        if cfg.characteristic and self.model.is_system:
            cells = np.nonzero(mask.any(axis=1))[0]
            from .characteristic import limit_cells_characteristic_1d

            out[cells] = limit_cells_characteristic_1d(
                self, coeffs, cells, means_pad, t
            )
            out[cells, :, 0] = coeffs[cells, :, 0]
        else:
            ci, comp = np.nonzero(mask)
            a_old = coeffs[ci, comp, 1:]
            targets = np.stack([up[ci, comp], um[ci, comp]], axis=-1)
            out[ci, comp, 1:] = self._solve_1d(
                a_old, coeffs[ci, comp, 0], targets, util_mod[ci, comp]
            )
        return out, mask

    def _solve_1d(self, a_old, alpha0, targets, util_mod):
        if self.basis.degree == 1:
            new = np.zeros_like(a_old)
            new[:, 0] = _p1_slope_targets(util_mod, self.p1_scale)
            return new
        return self.solver.solve(a_old, alpha0, targets)

    # -- 2D ---------------------------------------------------------------
    def _apply_2d(self, coeffs, t):
        cfg, op = self.config, self.op
        means = coeffs[..., 0] * op.s
        nbrs = neighbor_means_2d(means, self.bc, self.model)
        edge_means = np.einsum("xyim,em->xyie", coeffs, self.gamma_rows)
        h = max(self.mesh.dx, self.mesh.dy)
        changed, targets = tvb_corrections_2d(means, nbrs, edge_means, cfg.tvb_m, h)
        if cfg.indicator == "tvb":
            mask = changed
        elif cfg.indicator == "always":
            mask = np.ones_like(changed)
        else:
            mask = kxrcf_2d(op, coeffs, self.model, t, self.bc)
        if not mask.any():
            return coeffs, mask

        out = coeffs.copy()
        if cfg.characteristic and self.model.is_system:
            cmask = mask.any(axis=2)
            ix, iy = np.nonzero(cmask)
            from .characteristic import limit_cells_characteristic_2d

            out[ix, iy] = limit_cells_characteristic_2d(
                self, coeffs, (ix, iy), means, nbrs, t
            )
            out[ix, iy, :, 0] = coeffs[ix, iy, :, 0]
        else:
            ix, iy, comp = np.nonzero(mask)
            a_old = coeffs[ix, iy, comp, 1:]
            out[ix, iy, comp, 1:] = self.solver.solve(
                a_old, coeffs[ix, iy, comp, 0], targets[ix, iy, comp]
            )
        return out, mask


def make_limiter(op, config):
    return Limiter(op, config)
