import numpy as np
import pytest

from fvsdg.mesh import BoundaryKind, BoundarySpec, Mesh1D, Mesh2D, ghost_state
from fvsdg.models import Burgers1D, Euler1D, Euler2D


def test_mesh1d_geometry():
    m = Mesh1D(0.0, 2.0, 4)
    assert m.dx == 0.5
    np.testing.assert_allclose(m.interfaces(), [0.0, 0.5, 1.0, 1.5, 2.0])
    np.testing.assert_allclose(m.centers(), [0.25, 0.75, 1.25, 1.75])
    assert np.all(np.diff(m.interfaces()) > 0)


def test_mesh2d_geometry():
    m = Mesh2D(0.0, 1.0, -1.0, 1.0, 2, 4)
    assert m.dx == 0.5 and m.dy == 0.5
    cx, cy = m.centers()
    assert cx.shape == (2, 4)
    assert cx[0, 0] == 0.25 and cy[0, 0] == -0.75


def test_periodic_requires_opposite_side():
    with pytest.raises(ValueError):
        BoundarySpec(left=BoundaryKind.PERIODIC, right=BoundaryKind.FREE)


def test_ghost_free_copies():
    m = Euler1D()
    trace = np.array([1.0, 0.5, 2.0])
    out = ghost_state(BoundaryKind.FREE, trace, m)
    np.testing.assert_array_equal(out, trace)


def test_ghost_reflective_flips_momentum():
    m = Euler1D()
    out = ghost_state(BoundaryKind.REFLECTIVE, np.array([1.0, 0.5, 2.0]), m)
    np.testing.assert_array_equal(out, [1.0, -0.5, 2.0])
    m2 = Euler2D()
    out = ghost_state(BoundaryKind.REFLECTIVE, np.array([1.0, 0.5, 0.3, 2.0]), m2, axis=1)
    np.testing.assert_array_equal(out, [1.0, 0.5, -0.3, 2.0])


def test_ghost_periodic_wraps():
    wrapped = np.array([3.0])
    out = ghost_state(BoundaryKind.PERIODIC, np.array([1.0]), wrapped_trace=wrapped)
    np.testing.assert_array_equal(out, wrapped)
    with pytest.raises(ValueError):
        ghost_state(BoundaryKind.PERIODIC, np.array([1.0]))


def test_ghost_reflective_rejects_scalars():
    with pytest.raises(ValueError):
        ghost_state(BoundaryKind.REFLECTIVE, np.array([1.0]), Burgers1D())


def test_periodic_interface_states_wrap():
    # right ghost of the last cell is the first cell's trace
    from fvsdg.basis import Basis1D, project_initial
    from fvsdg.dg import Dg1d
    from fvsdg.fluxes import ScalarSW

    mesh = Mesh1D(0.0, 1.0, 4)
    b = Basis1D(1)
    coef = project_initial(lambda x: x[..., None], mesh, b)
    op = Dg1d(Burgers1D(), mesh, b, ScalarSW(), BoundarySpec())
    sl, sr = op.interface_states(coef)
    uL, uR = op.traces(coef)
    np.testing.assert_allclose(sl[0], uR[-1])
    np.testing.assert_allclose(sr[-1], uL[0])
