"""FVS-RKDG: flux-vector-splitting discontinuous Galerkin solver for
1D/2D hyperbolic conservation laws with constrained-optimization
TVB(D)-minmod limiting and local characteristic decomposition."""

from .basis import Basis1D, Basis2D, project_initial
from .field import ModalField, field_from_function
from .fluxes import (
    AUSM,
    LaxFriedrichsGlobal,
    LaxFriedrichsLocal,
    ScalarLLF,
    ScalarSW,
    StegerWarming,
    VanLeer,
    ausm_flux,
    interface_flux,
    jacobian_fvs_interface_flux,
    make_scheme,
    scalar_llf_flux,
    scalar_sw_flux,
    split_eigen_lf,
    split_eigen_sw,
    vanleer_flux,
)
from .dg import Dg1d, Dg2d, make_operator
from .integrators import DivergenceError, integrate
from .limiters import LimiterConfig, Limiter, make_limiter, minmod
from .mesh import BoundaryKind, BoundarySpec, Mesh1D, Mesh2D, ghost_state
from .models import (
    Advection1D,
    Advection2D,
    BuckleyLeverett1D,
    Burgers1D,
    Burgers2D,
    Euler1D,
    Euler2D,
    InadmissibleState,
    SWE1D,
    SWE2D,
)
from .quadrature import QuadratureRule, gauss_rule

__version__ = "0.1.0"
