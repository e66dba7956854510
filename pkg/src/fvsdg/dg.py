"""Semi-discrete DG residual: volume term, FVS interface fluxes, source term.

The orthonormal basis makes the mass matrix the identity, so the residual is
directly d alpha_r / dt. Uniform meshes let every cell share one set of
reference basis tables; assembly is vectorized over cells and quadrature
points, and interface fluxes are evaluated in one batched call per direction.
"""

import numpy as np

from .fluxes import interface_flux, needs_global_bound, validate_scheme
from .mesh import BoundaryKind
from .quadrature import gauss_rule


def _flip(model, u, axis):
    out = u.copy()
    comp = model.momentum_components[axis] if model.momentum_components else None
    if comp is None:
        raise ValueError("reflective boundary unsupported for scalar equations")
    out[..., comp] = -out[..., comp]
    return out


class Dg1d:
    """Residual operator for one (model, mesh, basis, scheme, bc) combination."""

    def __init__(self, model, mesh, basis, scheme, bc, nq=None):
        validate_scheme(model, scheme)
        self.model = model
        self.mesh = mesh
        self.basis = basis
        self.scheme = scheme
        self.bc = bc
        nq = nq if nq is not None else basis.degree + 2
        rule = gauss_rule(nq)
        self.wq = rule.weights
        self.P = basis.ref_eval(rule.points)          # (nq, M)
        self.dP = basis.ref_eval(rule.points, 1)      # (nq, M), d/dxi
        self.pL = basis.ref_eval(np.array([-0.5]))[0]  # faces
        self.pR = basis.ref_eval(np.array([0.5]))[0]
        self.xq = mesh.centers()[:, None] + mesh.dx * rule.points[None, :]
        self.xi = mesh.interfaces()
        self.s = mesh.dx ** -0.5

    def values_at_quad(self, coeffs):
        return self.s * np.einsum("cim,qm->cqi", coeffs, self.P)

    def traces(self, coeffs):
        left = self.s * np.einsum("cim,m->ci", coeffs, self.pL)
        right = self.s * np.einsum("cim,m->ci", coeffs, self.pR)
        return left, right

    def interface_states(self, coeffs):
        """Left/right states at the N+1 interfaces with BC-resolved ghosts."""
        uL_face, uR_face = self.traces(coeffs)
        n = self.mesh.n
        m = coeffs.shape[1]
        sl = np.empty((n + 1, m))
        sr = np.empty((n + 1, m))
        sl[1:] = uR_face
        sr[:-1] = uL_face
        model = self.model
        if self.bc.left is BoundaryKind.PERIODIC:
            sl[0] = uR_face[-1]
            sr[-1] = uL_face[0]
        else:
            if self.bc.left is BoundaryKind.FREE:
                sl[0] = uL_face[0]
            else:
                sl[0] = _flip(model, uL_face[0], 0)
            if self.bc.right is BoundaryKind.FREE:
                sr[-1] = uR_face[-1]
            else:
                sr[-1] = _flip(model, uR_face[-1], 0)
        return sl, sr

    def residual(self, coeffs, t):
        model, mesh = self.model, self.mesh
        uq = self.values_at_quad(coeffs)
        fq = model.flux(uq, self.xq, t)
        vol = self.s * np.einsum("q,cqi,qm->cim", self.wq, fq, self.dP)

        sl, sr = self.interface_states(coeffs)
        gm = None
        if needs_global_bound(self.scheme):
            gm = float(
                max(
                    np.max(model.max_wavespeed(sl, self.xi, t)),
                    np.max(model.max_wavespeed(sr, self.xi, t)),
                )
            )
        fhat = interface_flux(model, self.scheme, sl, sr, x=self.xi, t=t, global_M=gm)
        surf = self.s * (
            np.einsum("ci,m->cim", fhat[1:], self.pR)
            - np.einsum("ci,m->cim", fhat[:-1], self.pL)
        )

        out = vol - surf
        src = model.source(uq, self.xq, t=t)
        if src is not None:
            out += np.sqrt(mesh.dx) * np.einsum("q,cqi,qm->cim", self.wq, src, self.P)
        return out

    def stable_dt(self, coeffs, t, cfl, dt_max=None):
        means = coeffs[..., 0] * self.s
        lam = self.model.max_wavespeed(means, self.mesh.centers(), t)
        lmax = max(float(np.max(lam)), self.model.speed_floor)
        if lmax <= 0.0:
            return dt_max if dt_max is not None else cfl * self.mesh.dx
        return cfl * self.mesh.dx / lmax


class Dg2d:
    def __init__(self, model, mesh, basis, scheme, bc, nq=None):
        validate_scheme(model, scheme)
        self.model = model
        self.mesh = mesh
        self.basis = basis
        self.scheme = scheme
        self.bc = bc
        nq = nq if nq is not None else basis.degree + 2
        from .quadrature import tensor_rule

        xi, eta, w = tensor_rule(nq)
        self.wq = w
        self.V = basis.ref_eval(xi, eta)            # (nq2, M)
        self.Dx = basis.ref_eval(xi, eta, (1, 0))   # d/dxi
        self.Dy = basis.ref_eval(xi, eta, (0, 1))   # d/deta
        rule = gauss_rule(nq)
        self.we = rule.weights
        pe = rule.points
        half = np.full_like(pe, 0.5)
        self.Wface = basis.ref_eval(-half, pe)      # (nqe, M) at xi = -1/2
        self.Eface = basis.ref_eval(half, pe)
        self.Sface = basis.ref_eval(pe, -half)
        self.Nface = basis.ref_eval(pe, half)

        cx2, cy2 = mesh.centers()
        cx = cx2[:, 0]
        cy = cy2[0, :]
        self.xq = cx2[:, :, None] + mesh.dx * xi[None, None, :]
        self.yq = cy2[:, :, None] + mesh.dy * eta[None, None, :]
        # physical coordinates of edge quadrature points
        xiedges = mesh.a + np.arange(mesh.nx + 1) * mesh.dx
        yiedges = mesh.c + np.arange(mesh.ny + 1) * mesh.dy
        self.xv = np.broadcast_to(
            xiedges[:, None, None], (mesh.nx + 1, mesh.ny, rule.n)
        )
        self.yv = np.broadcast_to(
            cy[None, :, None] + mesh.dy * pe[None, None, :],
            (mesh.nx + 1, mesh.ny, rule.n),
        )
        self.xh = np.broadcast_to(
            cx[:, None, None] + mesh.dx * pe[None, None, :],
            (mesh.nx, mesh.ny + 1, rule.n),
        )
        self.yh = np.broadcast_to(
            yiedges[None, :, None], (mesh.nx, mesh.ny + 1, rule.n)
        )
        self.s = (mesh.dx * mesh.dy) ** -0.5

    def values_at_quad(self, coeffs):
        return self.s * np.einsum("xyim,qm->xyqi", coeffs, self.V)

    def edge_values(self, coeffs, table):
        return self.s * np.einsum("xyim,qm->xyqi", coeffs, table)

    def _edge_states_x(self, coeffs):
        """Interior/exterior states on vertical edges, normal = +x."""
        west = self.edge_values(coeffs, self.Wface)  # (nx, ny, nqe, m)
        east = self.edge_values(coeffs, self.Eface)
        nx, ny, nqe, m = west.shape
        sl = np.empty((nx + 1, ny, nqe, m))
        sr = np.empty((nx + 1, ny, nqe, m))
        sl[1:] = east
        sr[:-1] = west
        if self.bc.left is BoundaryKind.PERIODIC:
            sl[0] = east[-1]
            sr[-1] = west[0]
        else:
            sl[0] = west[0] if self.bc.left is BoundaryKind.FREE else _flip(
                self.model, west[0], 0
            )
            sr[-1] = east[-1] if self.bc.right is BoundaryKind.FREE else _flip(
                self.model, east[-1], 0
            )
        return sl, sr

    def _edge_states_y(self, coeffs):
        south = self.edge_values(coeffs, self.Sface)
        north = self.edge_values(coeffs, self.Nface)
        nx, ny, nqe, m = south.shape
        sl = np.empty((nx, ny + 1, nqe, m))
        sr = np.empty((nx, ny + 1, nqe, m))
        sl[:, 1:] = north
        sr[:, :-1] = south
        if self.bc.bottom is BoundaryKind.PERIODIC:
            sl[:, 0] = north[:, -1]
            sr[:, -1] = south[:, 0]
        else:
            sl[:, 0] = south[:, 0] if self.bc.bottom is BoundaryKind.FREE else _flip(
                self.model, south[:, 0], 1
            )
            sr[:, -1] = north[:, -1] if self.bc.top is BoundaryKind.FREE else _flip(
                self.model, north[:, -1], 1
            )
        return sl, sr

    def residual(self, coeffs, t):
        model, mesh = self.model, self.mesh
        uq = self.values_at_quad(coeffs)
        F, G = model.flux_xy(uq, self.xq, self.yq, t)
        vol = self.s * (
            np.einsum("q,xyqi,qm->xyim", self.wq * mesh.dy, F, self.Dx)
            + np.einsum("q,xyqi,qm->xyim", self.wq * mesh.dx, G, self.Dy)
        )

        slx, srx = self._edge_states_x(coeffs)
        sly, sry = self._edge_states_y(coeffs)
        gm = None
        if needs_global_bound(self.scheme):
            gm = float(
                max(
                    np.max(model.max_wavespeed(slx, None, t)),
                    np.max(model.max_wavespeed(srx, None, t)),
                    np.max(model.max_wavespeed(sly, None, t)),
                    np.max(model.max_wavespeed(sry, None, t)),
                )
            )
        fx = interface_flux(
            model, self.scheme, slx, srx, x=self.xv, y=self.yv, t=t, n=(1.0, 0.0),
            global_M=gm,
        )
        fy = interface_flux(
            model, self.scheme, sly, sry, x=self.xh, y=self.yh, t=t, n=(0.0, 1.0),
            global_M=gm,
        )
        surf = self.s * mesh.dy * (
            np.einsum("q,xyqi,qm->xyim", self.we, fx[1:], self.Eface)
            - np.einsum("q,xyqi,qm->xyim", self.we, fx[:-1], self.Wface)
        )
        surf += self.s * mesh.dx * (
            np.einsum("q,xyqi,qm->xyim", self.we, fy[:, 1:], self.Nface)
            - np.einsum("q,xyqi,qm->xyim", self.we, fy[:, :-1], self.Sface)
        )

        out = vol - surf
        src = model.source(uq, self.xq, self.yq, t)
        if src is not None:
            out += np.sqrt(mesh.dx * mesh.dy) * np.einsum(
                "q,xyqi,qm->xyim", self.wq, src, self.V
            )
        return out

    def stable_dt(self, coeffs, t, cfl, dt_max=None):
        means = coeffs[..., 0] * self.s
        cx, cy = self.mesh.centers()
        pos = np.stack([cx, cy], axis=-1)
        lam = self.model.max_wavespeed(means, pos, t)
        floor = self.model.speed_floor
        rate = lam[..., 0] / self.mesh.dx + lam[..., 1] / self.mesh.dy
        rmax = max(float(np.max(rate)), floor / self.mesh.dx + floor / self.mesh.dy)
        if rmax <= 0.0:
            return dt_max if dt_max is not None else cfl * min(self.mesh.dx, self.mesh.dy)
        return cfl / rmax


def make_operator(model, mesh, basis, scheme, bc, nq=None):
    from .mesh import Mesh1D

    cls = Dg1d if isinstance(mesh, Mesh1D) else Dg2d
    return cls(model, mesh, basis, scheme, bc, nq)
