import numpy as np
import pytest

from fvsdg.models import (
    Advection1D,
    BuckleyLeverett1D,
    Burgers1D,
    Euler1D,
    Euler2D,
    InadmissibleState,
    SWE1D,
    SWE2D,
)
from fvsdg.models import exact

RNG = np.random.default_rng(7)


def random_euler1d(n=32):
    m = Euler1D()
    return m, m.conservative(
        RNG.uniform(0.2, 3.0, n), RNG.uniform(-2.0, 2.0, n), RNG.uniform(0.1, 4.0, n)
    )


def random_euler2d(n=32):
    m = Euler2D()
    return m, m.conservative(
        RNG.uniform(0.2, 3.0, n),
        RNG.uniform(-2.0, 2.0, n),
        RNG.uniform(-2.0, 2.0, n),
        RNG.uniform(0.1, 4.0, n),
    )


def test_euler_flux_example():
    m = Euler1D()
    f = m.flux(np.array([1.0, 0.0, 2.5]))
    np.testing.assert_allclose(f, [0.0, 1.0, 0.0], atol=1e-15)


def test_burgers_flux_example():
    assert Burgers1D().flux(np.array([3.0]))[0] == 4.5


def test_swe_flux_example():
    m = SWE1D()
    f = m.flux(m.conservative(1.0, 0.0))
    np.testing.assert_allclose(f, [0.0, 0.5 * 9.8120], atol=1e-14)


def test_flux_rejects_inadmissible():
    m = Euler1D()
    with pytest.raises(InadmissibleState):
        m.check_admissible(np.array([-1.0, 0.0, 1.0]), "test")
    with pytest.raises(InadmissibleState):
        m.check_admissible(np.array([1.0, 10.0, 1.0]), "test")  # negative pressure


def test_euler1d_eigenvalues_at_rest():
    m = Euler1D()
    lam, R, L = m.eigenstructure(m.conservative(1.0, 0.0, 1.0))
    a = np.sqrt(1.4)
    np.testing.assert_allclose(lam, [0.0, -a, a], atol=1e-15)


def test_swe_modified_eigenvalues():
    m = SWE1D()
    lam, _, _ = m.eigenstructure(m.conservative(2.0, 0.0))
    np.testing.assert_allclose(lam, [-np.sqrt(9.8120), np.sqrt(9.8120)], rtol=1e-14)


def test_eigenstructure_inverse_and_homogeneity_1d():
    m, U = random_euler1d()
    lam, R, L = m.eigenstructure(U)
    eye = np.einsum("...ij,...jk->...ik", R, L)
    assert np.abs(eye - np.eye(3)).max() < 1e-10
    AU = np.einsum("...ij,...j,...jk,...k->...i", R, lam, L, U)
    assert np.abs(AU - m.flux(U)).max() < 1e-10


def test_swe_modified_jacobian_reproduces_flux():
    m = SWE1D()
    U = m.conservative(RNG.uniform(0.1, 4.0, 32), RNG.uniform(-3.0, 3.0, 32))
    lam, R, L = m.eigenstructure(U)
    AU = np.einsum("...ij,...j,...jk,...k->...i", R, lam, L, U)
    assert np.abs(AU - m.flux(U)).max() < 1e-10


@pytest.mark.parametrize("n", [(1.0, 0.0), (0.0, 1.0), (0.6, 0.8), (-0.28, 0.96)])
def test_normal_eigenstructure_2d(n):
    m, U = random_euler2d()
    lam, R, L = m.eigenstructure_n(U, n)
    eye = np.einsum("...ij,...jk->...ik", R, L)
    assert np.abs(eye - np.eye(4)).max() < 1e-10
    AU = np.einsum("...ij,...j,...jk,...k->...i", R, lam, L, U)
    assert np.abs(AU - m.normal_flux(U, n)).max() < 1e-10


def test_normal_eigenstructure_at_rest():
    m = Euler2D()
    U = m.conservative(1.0, 0.0, 0.0, 1.0)
    lam, _, _ = m.eigenstructure_n(U, (1.0, 0.0))
    a = np.sqrt(1.4)
    np.testing.assert_allclose(lam, [0.0, 0.0, -a, a], atol=1e-15)


def test_normal_y_swaps_velocity_roles():
    m = Euler2D()
    U = m.conservative(1.2, 0.4, -0.9, 2.0)
    lam_y, _, _ = m.eigenstructure_n(U, (0.0, 1.0))
    Uswap = m.conservative(1.2, -0.9, 0.4, 2.0)
    lam_x, _, _ = m.eigenstructure_n(Uswap, (1.0, 0.0))
    np.testing.assert_allclose(lam_y, lam_x, rtol=1e-13)


def test_swe2d_modified_normal_jacobian():
    m = SWE2D()
    U = m.conservative(
        RNG.uniform(0.1, 4.0, 16), RNG.uniform(-3.0, 3.0, 16), RNG.uniform(-3.0, 3.0, 16)
    )
    for n in [(1.0, 0.0), (0.0, 1.0), (0.8, -0.6)]:
        lam, R, L = m.eigenstructure_n(U, n)
        assert np.abs(np.einsum("...ij,...jk->...ik", R, L) - np.eye(3)).max() < 1e-10
        AU = np.einsum("...ij,...j,...jk,...k->...i", R, lam, L, U)
        assert np.abs(AU - m.normal_flux(U, n)).max() < 1e-10


# -- Roe averages -----------------------------------------------------------

def test_roe_equal_states_reduces():
    m = Euler1D()
    U = m.conservative(1.3, 0.7, 2.1)
    rs = m.roe_average(U, U)
    rho, u, p = m.primitive(U)
    assert abs(rs.rho - rho) < 1e-13
    assert abs(rs.u - u) < 1e-13
    assert abs(rs.pressure - p) < 1e-12
    np.testing.assert_allclose(rs.conservative(), U, rtol=1e-12)


def test_roe_sqrt_weighted_examples():
    m = Euler1D()
    ul = m.conservative(1.0, 0.0, 1.0)
    ur = m.conservative(4.0, 3.0, 2.0)
    rs = m.roe_average(ul, ur)
    assert abs(rs.rho - 2.25) < 1e-14          # ((1+2)/2)^2
    assert abs(rs.u - 2.0) < 1e-14             # (1*0 + 2*3)/(1+2)


def test_roe_normal_2d_abs_jacobian_similarity():
    m, U = random_euler2d(16)
    V = np.roll(U, 1, axis=0)
    n = (0.6, 0.8)
    state, (lam, R, L), absA = m.roe_average_n(U, V, n)
    # |A_n| has eigenvalues |lambda|
    w = np.linalg.eigvals(absA)
    w = np.sort(np.real(w), axis=-1)
    lam_sorted = np.sort(np.abs(lam), axis=-1)
    assert np.abs(w - lam_sorted).max() < 1e-8


def test_roe_normal_reduces_to_1d():
    m2, U2 = random_euler2d(8)
    m1 = Euler1D()
    # v = 0 states: normal (1,0) Roe matches the 1D Roe
    rho, vx, vy, p = m2.primitive(U2)
    U2 = m2.conservative(rho, vx, 0.0 * vy, p)
    V2 = np.roll(U2, 1, axis=0)
    state, eig, absA = m2.roe_average_n(U2, V2, (1.0, 0.0))
    U1 = m1.conservative(rho, vx, p)
    V1 = np.roll(U1, 1, axis=0)
    rs1 = m1.roe_average(U1, V1)
    np.testing.assert_allclose(state.rho, rs1.rho, rtol=1e-13)
    np.testing.assert_allclose(state.u, rs1.u, rtol=1e-13)
    np.testing.assert_allclose(state.sound, rs1.sound, rtol=1e-13)


def test_primitive_roundtrip():
    m, U = random_euler1d()
    np.testing.assert_allclose(m.conservative(*m.primitive(U)), U, rtol=1e-13)
    m2, U2 = random_euler2d()
    np.testing.assert_allclose(m2.conservative(*m2.primitive(U2)), U2, rtol=1e-13)


def test_buckley_leverett_dflux():
    m = BuckleyLeverett1D()
    u = RNG.uniform(-0.5, 1.5, 64)
    h = 1e-6
    fd = (m.flux(u + h) - m.flux(u - h)) / (2 * h)
    assert np.abs(fd - m.dflux(u[..., None])).max() < 1e-8
    assert m.max_wavespeed(np.linspace(0, 1, 201)[:, None]).max() < m.global_alpha


# -- exact solutions --------------------------------------------------------

def test_burgers_exact_presock_fixed_point():
    assert abs(exact.burgers1d_sin(np.array([np.pi]), 0.5)[0]) < 1e-12


def test_burgers_exact_characteristic_residual():
    x = np.linspace(0, 2 * np.pi, 101)
    for t in (0.3, 0.9):
        u = exact.burgers1d_sin(x, t)
        # u = sin(x*) with x* = x - u t
        assert np.abs(u - np.sin(x - u * t)).max() < 1e-10


def test_burgers_exact_post_shock():
    # stationary shock at pi: odd symmetry, no overshoot of initial amplitude
    x = np.linspace(0, 2 * np.pi, 401)
    u = exact.burgers1d_sin(x, 2.0)
    assert np.abs(u + exact.burgers1d_sin(2 * np.pi - x, 2.0)).max() < 1e-10
    assert np.abs(u).max() <= 1.0
    assert np.abs(u - np.sin(x - u * 2.0)).max() < 1e-10


def test_euler_density_wave_value():
    U = exact.euler1d_density_wave(np.array([0.0]), 1.0)
    rho = U[0, 0]
    assert abs(rho - (1 + 0.2 * np.cos(0.7 * np.pi))) < 1e-14


def test_advection_sin_x_formula():
    x = np.linspace(0.01, 2 * np.pi - 0.01, 301)
    t = 0.8
    u = exact.advection_sin_x(x, t)
    ref = np.sin(2 * np.arctan(np.exp(-t) * np.tan(x / 2))) / np.sin(x)
    mask = np.abs(np.sin(x)) > 1e-3
    assert np.abs(u[mask] - ref[mask]).max() < 1e-11


def test_advection_sin_x_limits():
    t = 0.6
    # removable singularities at x = 0 and x = pi
    assert abs(exact.advection_sin_x(np.array([1e-9]), t)[0] - np.exp(-t)) < 1e-6
    assert abs(exact.advection_sin_x(np.array([np.pi]), t)[0] - np.exp(t)) < 1e-9


def test_advection_sin_t_translation():
    x = np.linspace(0, 2 * np.pi, 50)
    u = exact.advection_sin_t(x, 20.0)
    np.testing.assert_allclose(u, np.sin(x), atol=1e-12)  # whole periods


def test_burgers2d_reduction():
    x = np.linspace(0, 4, 21)
    y = 0.3 * np.ones_like(x)
    t = 0.1
    u = exact.burgers2d_sin(x, y, t)
    xi = x + y
    assert np.abs(u - np.sin(0.5 * np.pi * (xi - 2 * u * t))).max() < 1e-10
