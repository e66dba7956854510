"""Per-cell, per-component modal coefficient storage (the discrete solution)."""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .basis import Basis1D, Basis2D, project_initial
from .mesh import Mesh1D, Mesh2D


@dataclass
class ModalField:
    """coeffs: 1D (ncells, ncomp, nmodes); 2D (nx, ny, ncomp, nmodes)."""

    coeffs: np.ndarray
    mesh: object
    basis: object
    time: float = 0.0

    def __post_init__(self):
        expected = self.basis.nmodes
        if self.coeffs.shape[-1] != expected:
            raise ValueError(
                f"mode count {self.coeffs.shape[-1]} does not match basis ({expected})"
            )

    @property
    def ndim(self):
        return 1 if isinstance(self.mesh, Mesh1D) else 2

    @property
    def ncomp(self):
        return self.coeffs.shape[-2]

    def cell_volume(self):
        m = self.mesh
        return m.dx if self.ndim == 1 else m.dx * m.dy

    def cell_means(self):
        """phi_0 is constant |cell|^(-1/2), so means are alpha_0 / sqrt(|cell|)."""
        return self.coeffs[..., 0] / np.sqrt(self.cell_volume())

    def total_mass(self):
        """Integral of each component over the domain."""
        axes = tuple(range(self.coeffs.ndim - 2))
        return np.sqrt(self.cell_volume()) * self.coeffs[..., 0].sum(axis=axes)

    def copy(self):
        return ModalField(self.coeffs.copy(), self.mesh, self.basis, self.time)


def field_from_function(f, mesh, basis, t=0.0, nq=None):
    return ModalField(project_initial(f, mesh, basis, nq), mesh, basis, t)
