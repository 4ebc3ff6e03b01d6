"""Regularized determinants and argument-principle zero counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .errors import SingularFreeResolventError, WindingError
from .grid import BlockOperator, Discretization, assemble_coupled


def det_reg(K, p: int = 2) -> complex:
    """det_p(I + K) from the eigenvalues of K.

    det_p(I+K) = prod_n (1 + lam_n) exp(sum_{k=1}^{p-1} (-1)^k lam_n^k / k).
    p = 1 is the plain determinant; a nilpotent K gives exactly 1 for any p.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    lam = linalg.eigen_all(np.asarray(K, dtype=complex))
    out = complex(1.0)
    for ln in lam:
        corr = sum((-1.0) ** k / k * ln**k for k in range(1, p))
        out *= (1.0 + ln) * np.exp(corr)
    return out


@dataclass(frozen=True)
class DetFunction:
    """lambda -> det_p(I + K(lambda)) for a finite-section kernel builder."""

    order: int
    kernel: Callable

    def __call__(self, lam: complex) -> complex:
        return det_reg(self.kernel(lam), self.order)


def _free_assembly(model, contour, j_min, j_max, d: Discretization) -> BlockOperator:
    return assemble_coupled(model, contour, j_min, j_max, None, d)


def ls_kernel(model, j_min, j_max, potential, sigma, d: Discretization,
              contour=None, free: BlockOperator | None = None,
              coupled: BlockOperator | None = None):
    """Finite-section kernel K(sigma) = V_blocks (A_free - z)^{-1}.

    Zeros of det_p(I + K) locate perturbed resonances; a strictly
    block-triangular V makes K nilpotent and the determinant identically 1.
    The free and coupled assemblies are sigma-independent and may be passed
    in to amortize repeated evaluations.
    """
    if free is None:
        free = _free_assembly(model, contour, j_min, j_max, d)
    z = complex(model.spectral_value(sigma))
    n = free.block_size
    dim = free.dimension
    # distance of z to the free spectrum of the discretization
    gap = np.inf
    for j, blk in free.diagonal.items():
        w = linalg.eigen_all(blk)
        gap = min(gap, float(np.min(np.abs(w - z))))
    if gap < 1e-8:
        raise SingularFreeResolventError(
            f"sigma={sigma} is within {gap:.2e} of a free discretization eigenvalue"
        )
    A = free.to_matrix() - z * np.eye(dim)
    if coupled is None:
        coupled = assemble_coupled(model, contour, j_min, j_max, potential, d)
    B = np.zeros((dim, dim), dtype=complex)
    for (jp, j), diag in coupled.coupling.items():
        r0, r1 = coupled.row_range(jp)
        c0, c1 = coupled.row_range(j)
        B[r0:r1, c0:c1] = np.diag(diag)
    return B @ np.linalg.inv(A)


def ls_determinant(model, j_min, j_max, potential, sigma, d: Discretization,
                   p: int = 2, contour=None, free: BlockOperator | None = None,
                   coupled: BlockOperator | None = None) -> complex:
    """Finite-section Lipmann-Schwinger determinant det_p(I + V R0(sigma))."""
    K = ls_kernel(model, j_min, j_max, potential, sigma, d, contour, free, coupled)
    return det_reg(K, p)


def count_zeros(fn, center: complex, radius: float, q_nodes: int = 256) -> int:
    """Winding number of fn around a circle, as a checked integer.

    Trapezoid quadrature of fn'/fn with fn' from central differences of the
    sampled values; a residual gap above 0.1 from the nearest integer raises.
    """
    if q_nodes < 16:
        raise ValueError("q_nodes too small")
    phis = 2.0 * np.pi * np.arange(q_nodes) / q_nodes
    z = center + radius * np.exp(1j * phis)
    f = np.array([fn(zk) for zk in z], dtype=complex)
    if np.any(np.abs(f) < 1e-10):
        raise WindingError("function vanishes on the counting contour")
    fp = (np.roll(f, -1) - np.roll(f, 1)) / (np.roll(z, -1) - np.roll(z, 1))
    dz = (np.roll(z, -1) - np.roll(z, 1)) / 2.0
    integral = np.sum(fp / f * dz) / (2.0j * np.pi)
    w = integral.real
    nearest = round(w)
    if abs(w - nearest) > 0.1 or abs(integral.imag) > 0.1:
        raise WindingError(
            f"non-integer winding {integral:.4f}; refine the quadrature"
        )
    return int(nearest)
