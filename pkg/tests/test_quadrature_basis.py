import numpy as np
import pytest

from fvsdg.basis import Basis1D, Basis2D, modes_2d, project_initial
from fvsdg.mesh import Mesh1D, Mesh2D
from fvsdg.quadrature import gauss_rule, tensor_rule


def test_gauss_rule_midpoint():
    r = gauss_rule(1)
    assert r.points[0] == 0.0
    assert r.weights[0] == 1.0


def test_gauss_rule_two_points():
    r = gauss_rule(2)
    np.testing.assert_allclose(np.sort(r.points), [-1 / (2 * np.sqrt(3)), 1 / (2 * np.sqrt(3))])
    np.testing.assert_allclose(r.weights, [0.5, 0.5])


def test_gauss_rule_weights_normalized_and_exact():
    for n in range(1, 17):
        r = gauss_rule(n)
        assert abs(r.weights.sum() - 1.0) < 1e-14
        # integrate monomials up to the stated exactness
        for p in range(r.exactness + 1):
            val = (r.weights * r.points**p).sum()
            exact = 0.0 if p % 2 else (0.5**p) / (p + 1)
            assert abs(val - exact) < 1e-14


def test_gauss_rule_degree_nine_polynomial():
    r = gauss_rule(5)
    assert abs((r.weights * r.points**8).sum() - 1.0 / (9 * 256)) < 1e-15


def test_gauss_rule_range_errors():
    with pytest.raises(ValueError):
        gauss_rule(0)
    with pytest.raises(ValueError):
        gauss_rule(17)


@pytest.mark.parametrize("K", [0, 1, 2, 3, 4, 5, 6])
def test_orthonormality_1d(K):
    b = Basis1D(K)
    cell = (0.7, 0.31)  # center, width
    r = gauss_rule(K + 2)
    V = b.eval(cell[0] + cell[1] * r.points, *cell)
    gram = cell[1] * np.einsum("q,qi,qj->ij", r.weights, V, V)
    assert np.abs(gram - np.eye(K + 1)).max() < 1e-12


@pytest.mark.parametrize("K", [0, 1, 2, 3, 4, 5, 6])
def test_orthonormality_2d(K):
    b = Basis2D(K)
    xi, eta, w = tensor_rule(K + 2)
    dx, dy = 0.4, 0.15
    V = b.eval(1.0 + dx * xi, -2.0 + dy * eta, (1.0, -2.0), (dx, dy))
    gram = dx * dy * np.einsum("q,qi,qj->ij", w, V, V)
    assert np.abs(gram - np.eye(b.nmodes)).max() < 1e-12
    assert b.nmodes == (K + 1) * (K + 2) // 2


def test_mode_ordering_2d():
    assert modes_2d(2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_constant_mode_value():
    # phi_0 = 1/sqrt(dx); on a unit cell it is exactly 1
    b = Basis1D(1)
    v = b.eval(np.array([0.3]), 0.5, 1.0)
    assert abs(v[0, 0] - 1.0) < 1e-15


def test_derivative_beyond_degree_is_zero():
    b = Basis1D(2)
    v = b.eval(np.linspace(0.1, 0.9, 7), 0.5, 1.0, deriv=2)
    assert np.all(v[:, :2] == 0.0)  # modes 0 and 1 killed by d^2/dx^2
    with pytest.raises(ValueError):
        b.eval(np.array([0.5]), 0.5, 1.0, deriv=3)


def test_inner_products_on_half_cell():
    # <phi_2, phi_3> = 0 and <phi_3, phi_3> = 1 on [0, 0.5], K = 3
    b = Basis1D(3)
    r = gauss_rule(7)  # exact for degree 13 >= 6
    center, width = 0.25, 0.5
    V = b.eval(center + width * r.points, center, width)
    i23 = width * (r.weights * V[:, 2] * V[:, 3]).sum()
    i33 = width * (r.weights * V[:, 3] * V[:, 3]).sum()
    assert abs(i23) < 1e-13
    assert abs(i33 - 1.0) < 1e-13


def test_projection_constant():
    mesh = Mesh1D(0.0, 3.0, 6)
    b = Basis1D(3)
    c = 2.7
    coef = project_initial(lambda x: np.full(x.shape + (1,), c), mesh, b)
    np.testing.assert_allclose(coef[:, 0, 0], c * np.sqrt(mesh.dx), rtol=1e-14)
    assert np.abs(coef[:, 0, 1:]).max() < 1e-14


def test_projection_sin_cell_means():
    mesh = Mesh1D(0.0, 2 * np.pi, 20)
    b = Basis1D(3)
    coef = project_initial(lambda x: np.sin(x)[..., None], mesh, b)
    means = coef[:, 0, 0] / np.sqrt(mesh.dx)
    xl = mesh.interfaces()[:-1]
    xr = mesh.interfaces()[1:]
    exact = (np.cos(xl) - np.cos(xr)) / mesh.dx
    np.testing.assert_allclose(means, exact, atol=1e-10)


def test_projection_reproduces_polynomials():
    # projecting a degree-K polynomial reproduces it at quadrature points
    mesh = Mesh1D(-1.0, 2.0, 5)
    K = 4
    b = Basis1D(K)
    poly = lambda x: (0.3 + x - 2 * x**2 + 0.5 * x**3 + 0.1 * x**4)[..., None]
    coef = project_initial(poly, mesh, b)
    r = gauss_rule(K + 2)
    x = mesh.centers()[:, None] + mesh.dx * r.points[None, :]
    vals = mesh.dx**-0.5 * np.einsum("cim,qm->cqi", coef, b.ref_eval(r.points))
    np.testing.assert_allclose(vals, poly(x), atol=1e-12)
    # idempotence: projecting the projection changes nothing
    def eval_proj(xx):
        idx = np.clip(((xx - mesh.a) / mesh.dx).astype(int), 0, mesh.n - 1)
        xi = (xx - (mesh.a + (idx + 0.5) * mesh.dx)) / mesh.dx
        tab = b.ref_eval(xi.ravel())
        out = mesh.dx**-0.5 * np.einsum("pim,pm->pi", coef[idx.ravel()], tab)
        return out.reshape(xx.shape + (1,))

    coef2 = project_initial(eval_proj, mesh, b)
    np.testing.assert_allclose(coef2, coef, atol=1e-12)


def test_projection_2d_constant():
    mesh = Mesh2D(0.0, 1.0, 0.0, 2.0, 4, 3)
    b = Basis2D(2)
    coef = project_initial(lambda x, y: np.full(x.shape + (1,), 1.5), mesh, b)
    np.testing.assert_allclose(
        coef[..., 0, 0], 1.5 * np.sqrt(mesh.dx * mesh.dy), rtol=1e-14
    )
    assert np.abs(coef[..., 0, 1:]).max() < 1e-14


def test_sod_projection_side_means():
    from fvsdg.cases import get_case

    spec = get_case("sod")
    mesh = Mesh1D(-1.0, 1.0, 8)
    b = Basis1D(2)
    coef = project_initial(spec.ic, mesh, b)
    means = coef[:, 0, 0] / np.sqrt(mesh.dx)
    assert np.allclose(means[:4], 1.0)      # rho = 1 left of x = 0
    assert np.allclose(means[4:], 0.125)    # rho = 0.125 right of x = 0
