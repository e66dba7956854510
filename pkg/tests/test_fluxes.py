import numpy as np
import pytest

from fvsdg.fluxes import (
    AUSM,
    LaxFriedrichsGlobal,
    LaxFriedrichsLocal,
    PositivityViolation,
    ScalarLLF,
    ScalarSW,
    SchemeModelMismatch,
    StegerWarming,
    VanLeer,
    ausm_flux,
    ausm_split,
    interface_flux,
    jacobian_fvs_interface_flux,
    mach_minus,
    mach_plus,
    pressure_minus,
    pressure_plus,
    scalar_llf_flux,
    scalar_sw_flux,
    split_eigen_lf,
    split_eigen_sw,
    validate_scheme,
    vanleer_flux,
    vanleer_split,
)
from fvsdg.models import Advection1D, Burgers1D, Burgers2D, Euler1D, Euler2D, SWE1D, SWE2D

RNG = np.random.default_rng(11)

ALL_SYSTEM_SCHEMES = [
    StegerWarming(),
    StegerWarming(delta=1e-8),
    LaxFriedrichsLocal(),
    LaxFriedrichsGlobal(M=8.0),
    VanLeer(),
    AUSM(),
]


def states_1d(m, n=64):
    return m.conservative(
        RNG.uniform(0.2, 3.0, n), RNG.uniform(-2.5, 2.5, n), RNG.uniform(0.1, 4.0, n)
    )


def states_2d(m, n=64):
    return m.conservative(
        RNG.uniform(0.2, 3.0, n),
        RNG.uniform(-2.5, 2.5, n),
        RNG.uniform(-2.5, 2.5, n),
        RNG.uniform(0.1, 4.0, n),
    )


# -- eigenvalue splits ------------------------------------------------------

def test_split_sw_signs_and_sum():
    lam = RNG.uniform(-5, 5, 100)
    lp, lm = split_eigen_sw(lam)
    assert np.all(lp >= 0) and np.all(lm <= 0)
    np.testing.assert_allclose(lp + lm, lam, atol=1e-15)
    assert split_eigen_sw(np.array([2.0]))[0][0] == 2.0
    assert split_eigen_sw(np.array([-3.0]))[1][0] == -3.0


def test_split_sw_smoothed():
    lp, lm = split_eigen_sw(np.array([0.0]), delta=1e-8)
    np.testing.assert_allclose(lp, [5e-9])
    np.testing.assert_allclose(lm, [-5e-9])


def test_split_lf():
    lp, lm = split_eigen_lf(np.array([1.0]), 2.0)
    np.testing.assert_allclose([lp[0], lm[0]], [1.5, -0.5])
    lp, lm = split_eigen_lf(np.array([-2.0]), 2.0)
    np.testing.assert_allclose([lp[0], lm[0]], [0.0, -2.0])
    lp, lm = split_eigen_lf(np.array([0.0]), 1.0)
    np.testing.assert_allclose([lp[0], lm[0]], [0.5, -0.5])
    with pytest.raises(PositivityViolation):
        split_eigen_lf(np.array([3.0]), 2.0)


# -- splitting identity and consistency --------------------------------------

@pytest.mark.parametrize("scheme", ALL_SYSTEM_SCHEMES)
def test_consistency_euler1d(scheme):
    m = Euler1D()
    U = states_1d(m)
    fh = interface_flux(m, scheme, U, U)
    assert np.abs(fh - m.flux(U)).max() < 1e-12


@pytest.mark.parametrize("scheme", ALL_SYSTEM_SCHEMES)
@pytest.mark.parametrize("n", [(1.0, 0.0), (0.0, 1.0)])
def test_consistency_euler2d(scheme, n):
    m = Euler2D()
    U = states_2d(m)
    fh = interface_flux(m, scheme, U, U, n=n)
    assert np.abs(fh - m.normal_flux(U, n)).max() < 1e-12


@pytest.mark.parametrize("scheme", ALL_SYSTEM_SCHEMES)
def test_consistency_swe(scheme):
    m = SWE1D()
    U = m.conservative(RNG.uniform(0.1, 3.0, 64), RNG.uniform(-2.0, 2.0, 64))
    fh = interface_flux(m, scheme, U, U)
    assert np.abs(fh - m.flux(U)).max() < 1e-12
    m2 = SWE2D()
    U2 = m2.conservative(
        RNG.uniform(0.1, 3.0, 64), RNG.uniform(-2.0, 2.0, 64), RNG.uniform(-2.0, 2.0, 64)
    )
    for n in [(1.0, 0.0), (0.0, 1.0)]:
        fh = interface_flux(m2, scheme, U2, U2, n=n)
        assert np.abs(fh - m2.normal_flux(U2, n)).max() < 1e-12


def test_vanleer_split_identity_and_branches():
    m = Euler1D()
    U = states_1d(m)
    fp, fm = vanleer_split(m, U)
    assert np.abs(fp + fm - m.flux(U)).max() < 1e-12
    # supersonic state: F- = 0 and F+ = F (M_a = 2)
    a = np.sqrt(1.4 * 1.0 / 1.0)
    Us = m.conservative(1.0, 2 * a, 1.0)
    fp, fm = vanleer_split(m, Us)
    assert np.abs(fm).max() == 0.0
    np.testing.assert_allclose(fp, m.flux(Us), rtol=1e-14)


def test_ausm_split_identity():
    for m, U in [(Euler1D(), states_1d(Euler1D()))]:
        fp, fm = ausm_split(m, U)
        assert np.abs(fp + fm - m.flux(U)).max() < 1e-12


def test_mach_split_algebra():
    for ma in (-0.9, -0.3, 0.5):
        assert abs(mach_plus(np.array(ma)) + mach_minus(np.array(ma)) - ma) < 1e-15
    assert mach_plus(np.array(0.0)) == 0.25
    assert mach_minus(np.array(0.0)) == -0.25
    assert mach_plus(np.array(2.0)) == 2.0 and mach_minus(np.array(2.0)) == 0.0
    # pressure split
    assert pressure_plus(np.array(1.0), np.array(0.0)) == 0.5
    assert pressure_minus(np.array(1.0), np.array(0.0)) == 0.5
    assert pressure_plus(np.array(3.0), np.array(2.0)) == 3.0
    assert pressure_minus(np.array(3.0), np.array(2.0)) == 0.0


def test_supersonic_upwinding_jacobian_fvs():
    m = Euler1D()
    a = np.sqrt(1.4)
    UL = m.conservative(1.0, 3 * a, 1.0)   # all eigenvalues positive
    UR = m.conservative(0.7, 3 * a, 0.9)
    fh = jacobian_fvs_interface_flux(m, StegerWarming(), UL[None], UR[None])
    np.testing.assert_allclose(fh[0], m.flux(UL), rtol=1e-12)


def test_sw_flux_two_assembly_routes_agree():
    # A+- U assembled via R Lambda+- L U matches the split flux on dam-break states
    m = SWE1D()
    UL = m.conservative(1.0, 0.0)
    UR = m.conservative(0.1, 0.0)
    fh = jacobian_fvs_interface_flux(m, StegerWarming(), UL[None], UR[None])[0]
    lamL, RL, LL = m.eigenstructure(UL)
    lamR, RR, LR = m.eigenstructure(UR)
    lp = 0.5 * (lamL + np.abs(lamL))
    lm = 0.5 * (lamR - np.abs(lamR))
    manual = RL @ (lp * (LL @ UL)) + RR @ (lm * (LR @ UR))
    np.testing.assert_allclose(fh, manual, atol=1e-12)


def test_lf_global_dissipation_form():
    # LF-global flux equals the classic centered form with alpha = M
    m = Euler1D()
    UL, UR = states_1d(m, 8), states_1d(m, 8)
    M = 9.0
    fh = jacobian_fvs_interface_flux(m, LaxFriedrichsGlobal(M=M), UL, UR)
    ref = 0.5 * (m.flux(UL) + m.flux(UR) - M * (UR - UL))
    np.testing.assert_allclose(fh, ref, atol=1e-11)


# -- scalar fluxes ----------------------------------------------------------

def test_scalar_sw_consistency_and_examples():
    b = Burgers1D()
    u = RNG.uniform(-2, 2, 50)[:, None]
    np.testing.assert_allclose(scalar_sw_flux(b, u, u), b.flux(u), atol=1e-14)
    assert scalar_sw_flux(b, np.array([[2.0]]), np.array([[0.0]]))[0, 0] == 2.0
    adv = Advection1D(1.5)
    ul, ur = np.array([[0.7]]), np.array([[-0.4]])
    fh = scalar_sw_flux(adv, ul, ur, x=np.array([0.0]))
    assert abs(fh[0, 0] - 1.5 * 0.7) < 1e-15  # pure upwind for c > 0


def test_scalar_llf_examples():
    b = Burgers1D()
    assert scalar_llf_flux(b, np.array([[1.0]]), np.array([[-1.0]]))[0, 0] == 1.5
    adv = Advection1D(-2.0)
    fh = scalar_llf_flux(adv, np.array([[0.9]]), np.array([[0.3]]), x=np.array([0.0]))
    assert abs(fh[0, 0] - (-2.0 * 0.3)) < 1e-15  # downwind state selected
    u = RNG.uniform(-2, 2, 30)[:, None]
    np.testing.assert_allclose(scalar_llf_flux(b, u, u), b.flux(u), atol=1e-14)


def test_scalar_sw_2d_normal():
    b = Burgers2D()
    u = RNG.uniform(-2, 2, 30)[:, None]
    for n in [(1.0, 0.0), (0.0, 1.0)]:
        fh = scalar_sw_flux(b, u, u, n=n)
        F, G = b.flux_xy(u)
        np.testing.assert_allclose(fh, n[0] * F + n[1] * G, atol=1e-14)


def test_scalar_sw_monotone_grid():
    """Nondecreasing in u_L, nonincreasing in u_R on [-2, 2]^2 (101x101)."""
    grid = np.linspace(-2.0, 2.0, 101)
    ul, ur = np.meshgrid(grid, grid, indexing="ij")
    for model in (Burgers1D(), Advection1D(1.3), Advection1D(-0.7)):
        x = np.zeros_like(ul)
        fh = scalar_sw_flux(model, ul[..., None], ur[..., None], x=x)[..., 0]
        dL = np.diff(fh, axis=0)   # increasing u_L
        dR = np.diff(fh, axis=1)   # increasing u_R
        assert dL.min() > -1e-10
        assert dR.max() < 1e-10


def test_scheme_compatibility():
    with pytest.raises(SchemeModelMismatch):
        validate_scheme(Burgers1D(), StegerWarming())
    with pytest.raises(SchemeModelMismatch):
        validate_scheme(Euler1D(), ScalarSW())
    with pytest.raises(SchemeModelMismatch):
        validate_scheme(Burgers1D(), VanLeer())
    with pytest.raises(ValueError):
        validate_scheme(Burgers1D(), ScalarLLF(mode="global"))
    from fvsdg.models import BuckleyLeverett1D

    with pytest.raises(SchemeModelMismatch):
        validate_scheme(BuckleyLeverett1D(), ScalarSW())
    validate_scheme(Euler1D(), AUSM())
    validate_scheme(SWE1D(), VanLeer())
    validate_scheme(Burgers1D(), ScalarLLF())
