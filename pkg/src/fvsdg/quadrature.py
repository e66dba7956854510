"""Gauss-Legendre quadrature on the reference interval [-1/2, 1/2]."""

from dataclasses import dataclass

import numpy as np

MAX_POINTS = 16


@dataclass(frozen=True)
class QuadratureRule:
    """Points/weights on [-1/2, 1/2] (1D) or its tensor square (2D).

    The reference measure is normalized: weights sum to 1.
    """

    points: np.ndarray
    weights: np.ndarray
    exactness: int

    @property
    def n(self):
        return len(self.weights)


def gauss_rule(n):
    """n-point Gauss-Legendre rule on [-1/2, 1/2], exact for degree 2n-1."""
    if not 1 <= n <= MAX_POINTS:
        raise ValueError(f"gauss rule size must be in [1, {MAX_POINTS}], got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    return QuadratureRule(points=x / 2.0, weights=w / 2.0, exactness=2 * n - 1)


def tensor_rule(n):
    """Tensor-product rule on [-1/2, 1/2]^2; returns (xi, eta, weights)."""
    r = gauss_rule(n)
    xi, eta = np.meshgrid(r.points, r.points, indexing="ij")
    w = np.outer(r.weights, r.weights)
    return xi.ravel(), eta.ravel(), w.ravel()
