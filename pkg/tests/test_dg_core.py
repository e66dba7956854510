import numpy as np
import pytest

from fvsdg.basis import Basis1D, Basis2D
from fvsdg.dg import Dg1d, Dg2d, make_operator
from fvsdg.field import field_from_function
from fvsdg.fluxes import (
    AUSM,
    LaxFriedrichsGlobal,
    LaxFriedrichsLocal,
    ScalarSW,
    StegerWarming,
    VanLeer,
)
from fvsdg.mesh import BoundarySpec, Mesh1D, Mesh2D
from fvsdg.models import Advection1D, Euler1D, Euler2D
from fvsdg.models.exact import euler1d_density_wave, euler2d_density_wave

PERIODIC = BoundarySpec()

SCHEMES_1D = [StegerWarming(), LaxFriedrichsLocal(), LaxFriedrichsGlobal(), VanLeer(), AUSM()]


@pytest.mark.parametrize("scheme", SCHEMES_1D)
def test_freestream_1d(scheme):
    m = Euler1D()
    mesh = Mesh1D(0.0, 1.0, 12)
    b = Basis1D(2)
    fld = field_from_function(
        lambda x: np.broadcast_to(m.conservative(1.3, 0.2, 0.7), x.shape + (3,)),
        mesh,
        b,
    )
    op = Dg1d(m, mesh, b, scheme, PERIODIC)
    assert np.abs(op.residual(fld.coeffs, 0.0)).max() < 1e-12


@pytest.mark.parametrize("scheme", SCHEMES_1D)
def test_freestream_2d(scheme):
    m = Euler2D()
    mesh = Mesh2D(0.0, 2.0, -1.0, 1.0, 6, 5)
    b = Basis2D(2)
    fld = field_from_function(
        lambda x, y: np.broadcast_to(m.conservative(1.0, -0.7, 0.3, 1.0), x.shape + (4,)),
        mesh,
        b,
    )
    op = Dg2d(m, mesh, b, scheme, PERIODIC)
    assert np.abs(op.residual(fld.coeffs, 0.0)).max() < 1e-12


def test_conservation_periodic_1d():
    m = Euler1D()
    mesh = Mesh1D(0.0, 2.0, 16)
    b = Basis1D(3)
    fld = field_from_function(lambda x: euler1d_density_wave(x, 0.0), mesh, b)
    op = Dg1d(m, mesh, b, StegerWarming(), PERIODIC)
    r = op.residual(fld.coeffs, 0.0)
    rate = np.sqrt(mesh.dx) * r[..., 0].sum(axis=0)
    assert np.abs(rate).max() < 1e-12


def test_conservation_periodic_2d():
    m = Euler2D()
    mesh = Mesh2D(0.0, 2.0, -1.0, 1.0, 8, 8)
    b = Basis2D(2)
    fld = field_from_function(lambda x, y: euler2d_density_wave(x, y, 0.0), mesh, b)
    op = Dg2d(m, mesh, b, AUSM(), PERIODIC)
    r = op.residual(fld.coeffs, 0.0)
    rate = np.sqrt(mesh.dx * mesh.dy) * r[..., 0].sum(axis=(0, 1))
    assert np.abs(rate).max() < 1e-12


def test_sod_initial_residual_zero_away_from_jump():
    from fvsdg.cases import get_case

    spec = get_case("sod")
    mesh = Mesh1D(-1.0, 1.0, 8)
    b = Basis1D(2)
    fld = field_from_function(spec.ic, mesh, b)
    op = Dg1d(Euler1D(), mesh, b, StegerWarming(), spec.bc)
    r = op.residual(fld.coeffs, 0.0)
    # piecewise-constant data: equal traces => consistent fluxes cancel in every cell
    assert np.abs(r).max() < 1e-12


def test_advection_residual_matches_derivative():
    # residual cell means approximate -d/dx f for smooth data
    adv = Advection1D(1.0)
    errs = []
    for N in (16, 32):
        mesh = Mesh1D(0.0, 2 * np.pi, N)
        b = Basis1D(2)
        fld = field_from_function(lambda x: np.sin(x)[..., None], mesh, b)
        op = Dg1d(adv, mesh, b, ScalarSW(), PERIODIC)
        r = op.residual(fld.coeffs, 0.0)
        means = r[..., 0, 0] / np.sqrt(mesh.dx)
        xl, xr = mesh.interfaces()[:-1], mesh.interfaces()[1:]
        exact = -(np.sin(xr) - np.sin(xl)) / mesh.dx  # cell average of -cos
        errs.append(np.abs(means - exact).max())
    assert errs[0] < 1e-2
    assert errs[0] / errs[1] > 6.0  # ~3rd order in the means


def test_2d_x_only_field_matches_1d():
    m1, m2 = Euler1D(), Euler2D()
    mesh1 = Mesh1D(0.0, 2.0, 8)
    mesh2 = Mesh2D(0.0, 2.0, -1.0, 1.0, 8, 4)
    b1, b2 = Basis1D(2), Basis2D(2)
    f1 = field_from_function(
        lambda x: m1.conservative(1 + 0.2 * np.cos(np.pi * x), -0.7, 1.0), mesh1, b1
    )
    f2 = field_from_function(
        lambda x, y: m2.conservative(1 + 0.2 * np.cos(np.pi * x), -0.7, 0.0 * y, 1.0),
        mesh2,
        b2,
    )
    r1 = Dg1d(m1, mesh1, b1, StegerWarming(), PERIODIC).residual(f1.coeffs, 0.0)
    r2 = Dg2d(m2, mesh2, b2, StegerWarming(), PERIODIC).residual(f2.coeffs, 0.0)
    means1 = r1[..., 0] / np.sqrt(mesh1.dx)
    means2 = r2[..., 0] / np.sqrt(mesh2.dx * mesh2.dy)
    for c1, c2 in [(0, 0), (1, 1), (2, 3)]:
        assert np.abs(means2[:, :, c2] - means1[:, c1][:, None]).max() < 1e-12
    assert np.abs(means2[:, :, 2]).max() < 1e-12


def test_swirl_flux_vanishes_at_half_period():
    from fvsdg.cases import get_case

    spec = get_case("swirl-deform")
    model = spec.make_model()
    mesh = Mesh2D(*spec.domain, 8, 8)
    b = Basis2D(1)
    fld = field_from_function(spec.ic, mesh, b)
    op = Dg2d(model, mesh, b, ScalarSW(), spec.bc)
    r = op.residual(fld.coeffs, 0.375)  # g(T/2) = 0
    assert np.abs(r).max() < 1e-12


def test_stable_dt():
    adv = Advection1D(1.0)
    mesh = Mesh1D(0.0, 1.0, 10)
    b = Basis1D(1)
    fld = field_from_function(lambda x: np.ones_like(x)[..., None], mesh, b)
    op = Dg1d(adv, mesh, b, ScalarSW(), PERIODIC)
    assert abs(op.stable_dt(fld.coeffs, 0.0, 0.1) - 0.01) < 1e-14

    m = Euler1D()
    fld = field_from_function(
        lambda x: np.broadcast_to(m.conservative(1.0, 0.0, 1.0), x.shape + (3,)),
        mesh,
        Basis1D(1),
    )
    op = Dg1d(m, mesh, Basis1D(1), StegerWarming(), PERIODIC)
    assert abs(op.stable_dt(fld.coeffs, 0.0, 1.0) - mesh.dx / np.sqrt(1.4)) < 1e-13


def test_stable_dt_2d_sum_rule():
    m = Euler2D()
    mesh = Mesh2D(0.0, 1.0, 0.0, 1.0, 10, 10)
    b = Basis2D(1)
    fld = field_from_function(
        lambda x, y: np.broadcast_to(m.conservative(1.0, 0.0, 0.0, 1.0), x.shape + (4,)),
        mesh,
        b,
    )
    op = Dg2d(m, mesh, b, AUSM(), PERIODIC)
    dt2 = op.stable_dt(fld.coeffs, 0.0, 1.0)
    # isotropic: lam_x = lam_y = a, dx = dy -> half the 1D step
    assert abs(dt2 - 0.5 * mesh.dx / np.sqrt(1.4)) < 1e-13


def test_stable_dt_zero_speed_fallback():
    adv = Advection1D(0.0)
    mesh = Mesh1D(0.0, 1.0, 10)
    b = Basis1D(1)
    fld = field_from_function(lambda x: np.ones_like(x)[..., None], mesh, b)
    op = Dg1d(adv, mesh, b, ScalarSW(), PERIODIC)
    assert op.stable_dt(fld.coeffs, 0.0, 0.1, dt_max=0.5) == 0.5
    assert op.stable_dt(fld.coeffs, 0.0, 0.1) == 0.1 * mesh.dx
