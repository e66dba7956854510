"""Orthonormal modal bases on reference cells.

1D: phi_l(x) = sqrt((2l+1)/dx) * P_l(2(x - xc)/dx), so <phi_j, phi_k> = delta_jk
on a cell of width dx and phi_0 = 1/sqrt(dx).

2D: tensor products phi_i(x)*phi_j(y) with total degree i+j <= K, ordered by
total degree and by x-degree descending inside each degree block. That ordering
is a contract relied on by the smoothness-matrix assembly and edge-mean rows.
"""

import numpy as np
from numpy.polynomial import legendre

from .quadrature import gauss_rule


def _ref_derivative_table(degree, xi, deriv):
    """Values of d^deriv/dxi^deriv of ptilde_l(xi) = sqrt(2l+1) P_l(2 xi).

    Returns an array (len(xi), degree+1); columns beyond the polynomial degree
    of a mode are exactly zero.
    """
    xi = np.asarray(xi, dtype=float)
    s = 2.0 * xi
    out = np.zeros(xi.shape + (degree + 1,))
    for ell in range(degree + 1):
        c = np.zeros(ell + 1)
        c[ell] = 1.0
        cd = legendre.legder(c, deriv) if deriv > 0 else c
        if cd.size:
            out[..., ell] = legendre.legval(s, cd)
    scale = np.sqrt(2.0 * np.arange(degree + 1) + 1.0) * (2.0 ** deriv)
    return out * scale


class Basis1D:
    """Degree-K orthonormal Legendre basis on an interval cell."""

    def __init__(self, degree):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        self.nmodes = degree + 1
        self._ref_cache = {}

    def ref_eval(self, xi, deriv=0):
        """ptilde values (and xi-derivatives) on the reference cell [-1/2, 1/2]."""
        key = (deriv, np.asarray(xi).tobytes())
        tab = self._ref_cache.get(key)
        if tab is None:
            tab = _ref_derivative_table(self.degree, xi, deriv)
            self._ref_cache[key] = tab
        return tab

    def eval(self, x, center, width, deriv=0):
        """phi-values (npoints, nmodes) at physical points of one cell."""
        if deriv < 0 or deriv > self.degree:
            raise ValueError(f"derivative order {deriv} outside [0, {self.degree}]")
        xi = (np.asarray(x, dtype=float) - center) / width
        return self.ref_eval(xi, deriv) * width ** (-0.5 - deriv)


def modes_2d(degree):
    """(i, j) exponent pairs ordered by total degree, x-degree descending."""
    out = []
    for deg in range(degree + 1):
        for i in range(deg, -1, -1):
            out.append((i, deg - i))
    return out


class Basis2D:
    """Degree-K (total degree) tensor Legendre basis on a rectangle cell."""

    def __init__(self, degree):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        self.modes = modes_2d(degree)
        self.nmodes = len(self.modes)  # (K+1)(K+2)/2
        self._b1 = Basis1D(degree)

    def ref_eval(self, xi, eta, deriv=(0, 0)):
        """ptilde_i^(dx)(xi) * ptilde_j^(dy)(eta) table, shape (npoints, nmodes)."""
        dx_t = self._b1.ref_eval(np.asarray(xi), deriv[0])
        dy_t = self._b1.ref_eval(np.asarray(eta), deriv[1])
        cols = [dx_t[..., i] * dy_t[..., j] for i, j in self.modes]
        return np.stack(cols, axis=-1)

    def eval(self, x, y, center, widths, deriv=(0, 0)):
        """phi-values (npoints, nmodes) at physical points of one cell."""
        if deriv[0] + deriv[1] > self.degree or min(deriv) < 0:
            raise ValueError(f"derivative multi-index {deriv} outside |d| <= {self.degree}")
        dx, dy = widths
        xi = (np.asarray(x, dtype=float) - center[0]) / dx
        eta = (np.asarray(y, dtype=float) - center[1]) / dy
        scale = (dx * dy) ** -0.5 * dx ** (-deriv[0]) * dy ** (-deriv[1])
        return self.ref_eval(xi, eta, deriv) * scale


def project_initial(f, mesh, basis, nq=None):
    """L2-project pointwise initial data onto the modal space, cell by cell.

    f maps x (1D) or x, y (2D) arrays to state arrays with a trailing
    component axis. Returns the modal coefficient array; 1D shape
    (ncells, ncomp, nmodes), 2D shape (nx, ny, ncomp, nmodes).
    """
    if nq is None:
        nq = basis.degree + 2
    if isinstance(basis, Basis1D):
        rule = gauss_rule(nq)
        xq = mesh.centers()[:, None] + mesh.dx * rule.points[None, :]
        vals = np.asarray(f(xq), dtype=float)  # (ncells, nq, m)
        tab = basis.ref_eval(rule.points)     # (nq, nmodes)
        return np.sqrt(mesh.dx) * np.einsum("q,cqi,qm->cim", rule.weights, vals, tab)
    from .quadrature import tensor_rule

    xi, eta, w = tensor_rule(nq)
    cx, cy = mesh.centers()
    xq = cx[:, :, None] + mesh.dx * xi[None, None, :]
    yq = cy[:, :, None] + mesh.dy * eta[None, None, :]
    vals = np.asarray(f(xq, yq), dtype=float)  # (nx, ny, nq2, m)
    tab = basis.ref_eval(xi, eta)              # (nq2, nmodes)
    return np.sqrt(mesh.dx * mesh.dy) * np.einsum("q,xyqi,qm->xyim", w, vals, tab)
