"""Uniform 1D/2D rectangular meshes and boundary-condition resolution."""

import enum
from dataclasses import dataclass

import numpy as np


class BoundaryKind(str, enum.Enum):
    PERIODIC = "periodic"
    FREE = "free"
    REFLECTIVE = "reflective"


@dataclass(frozen=True)
class Mesh1D:
    a: float
    b: float
    n: int

    def __post_init__(self):
        if self.n < 1 or self.b <= self.a:
            raise ValueError("mesh needs b > a and n >= 1")

    @property
    def dx(self):
        return (self.b - self.a) / self.n

    def centers(self):
        return self.a + (np.arange(self.n) + 0.5) * self.dx

    def interfaces(self):
        return self.a + np.arange(self.n + 1) * self.dx


@dataclass(frozen=True)
class Mesh2D:
    a: float
    b: float
    c: float
    d: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1 or self.b <= self.a or self.d <= self.c:
            raise ValueError("mesh needs b > a, d > c and nx, ny >= 1")

    @property
    def dx(self):
        return (self.b - self.a) / self.nx

    @property
    def dy(self):
        return (self.d - self.c) / self.ny

    def centers(self):
        cx = self.a + (np.arange(self.nx) + 0.5) * self.dx
        cy = self.c + (np.arange(self.ny) + 0.5) * self.dy
        return np.meshgrid(cx, cy, indexing="ij")


def _validate_pair(lo, hi, label):
    if (lo is BoundaryKind.PERIODIC) != (hi is BoundaryKind.PERIODIC):
        raise ValueError(f"periodic {label} boundary requires the opposite side periodic too")


@dataclass(frozen=True)
class BoundarySpec:
    """Per-side boundary kinds; 1D uses (left, right), 2D all four."""

    left: BoundaryKind = BoundaryKind.PERIODIC
    right: BoundaryKind = BoundaryKind.PERIODIC
    bottom: BoundaryKind = BoundaryKind.PERIODIC
    top: BoundaryKind = BoundaryKind.PERIODIC

    def __post_init__(self):
        _validate_pair(self.left, self.right, "x")
        _validate_pair(self.bottom, self.top, "y")


def periodic():
    return BoundarySpec()


def free():
    return BoundarySpec(*(BoundaryKind.FREE,) * 4)


def reflective():
    return BoundarySpec(*(BoundaryKind.REFLECTIVE,) * 4)


def ghost_state(kind, interior_trace, model=None, axis=0, wrapped_trace=None):
    """Exterior trace state at a boundary face.

    Periodic returns the trace from the wrapped cell (caller supplies it);
    Free copies the interior trace; Reflective copies with the normal momentum
    component negated. Scalar equations support Periodic and Free only.
    """
    u = np.asarray(interior_trace, dtype=float)
    if kind is BoundaryKind.PERIODIC:
        if wrapped_trace is None:
            raise ValueError("periodic ghost needs the wrapped-cell trace")
        return np.asarray(wrapped_trace, dtype=float)
    if kind is BoundaryKind.FREE:
        return u.copy()
    if kind is BoundaryKind.REFLECTIVE:
        if model is None or not model.momentum_components:
            raise ValueError("reflective boundary requires a model with momentum components")
        out = u.copy()
        comp = model.momentum_components[axis]
        out[..., comp] = -out[..., comp]
        return out
    raise ValueError(f"unknown boundary kind {kind!r}")
