"""Highest-weight multiplication shift on the 2-sphere (n = 3 check).

Multiplication by (x1 + i x2)^k = (sin(polar))^k e^{i k azimuth} on S^2 must
strictly raise the azimuthal index by k.  The matrix of this multiplication
in the orthonormal complex spherical-harmonic basis is computed by exact
quadrature (Gauss-Legendre in the polar angle, trapezoid in the azimuth).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y

from .errors import InvalidParameterError, NonConvergenceError


def basis_indices(l_max: int):
    """(l, m) pairs ordering the (l_max + 1)^2 dimensional basis."""
    return [(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]


@dataclass(frozen=True)
class ShiftMatrix:
    k: int
    l_max: int
    matrix: np.ndarray
    indices: tuple

    @property
    def dimension(self):
        return (self.l_max + 1) ** 2


def _harmonic_table(l_max: int, theta, phi):
    """Y_l^m sampled on the quadrature grid, keyed by (l, m)."""
    table = {}
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            table[(l, m)] = sph_harm_y(l, m, theta, phi)
    return table


def multiplication_matrix(k: int, l_max: int, n_gauss: int | None = None,
                          n_azimuthal: int | None = None) -> ShiftMatrix:
    """Matrix of multiplication by (x1 + i x2)^k on the harmonics up to l_max.

    The quadrature orders default to (and must reach) exactness for the
    polynomial integrands; an orthonormality residual above 1e-10 of the
    basis Gram matrix under the same quadrature raises.
    """
    if k < 1:
        raise InvalidParameterError("k must be at least 1")
    if l_max < 0:
        raise InvalidParameterError("l_max must be nonnegative")
    if n_gauss is None:
        n_gauss = l_max + k + 2
    if n_azimuthal is None:
        n_azimuthal = 2 * (l_max + k) + 2
    if n_gauss < l_max + k + 2 or n_azimuthal < 2 * (l_max + k) + 2:
        raise InvalidParameterError("quadrature orders below the exactness threshold")

    x, wx = np.polynomial.legendre.leggauss(n_gauss)
    theta = np.arccos(x)
    phi = 2.0 * np.pi * np.arange(n_azimuthal) / n_azimuthal
    wphi = 2.0 * np.pi / n_azimuthal
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    W = wx[:, None] * wphi * np.ones_like(PH)

    idx = basis_indices(l_max)
    table = _harmonic_table(l_max, TH, PH)

    gram = np.empty((len(idx), len(idx)), dtype=complex)
    flat = [table[lm] for lm in idx]
    for a, ya in enumerate(flat):
        for b, yb in enumerate(flat):
            gram[a, b] = np.sum(W * np.conj(ya) * yb)
    resid = np.max(np.abs(gram - np.eye(len(idx))))
    if resid > 1e-10:
        raise NonConvergenceError(
            f"quadrature under-resolves the basis: Gram residual {resid:.2e}"
        )

    mult = (np.sin(TH) * np.exp(1j * PH)) ** k
    S = np.empty((len(idx), len(idx)), dtype=complex)
    for b, yb in enumerate(flat):
        prod = W * mult * yb
        for a, ya in enumerate(flat):
            S[a, b] = np.sum(np.conj(ya) * prod)
    return ShiftMatrix(k=k, l_max=l_max, matrix=S, indices=tuple(idx))


def shift_verify(s: ShiftMatrix) -> dict:
    """Selection-rule audit: entries with m' != m + k must vanish."""
    max_violation = 0.0
    for a, (lp, mp) in enumerate(s.indices):
        for b, (l, m) in enumerate(s.indices):
            if mp != m + s.k:
                max_violation = max(max_violation, abs(s.matrix[a, b]))
    order = np.argsort([m for (_, m) in s.indices], kind="stable")
    P = s.matrix[np.ix_(order, order)]
    ms = np.array([s.indices[i][1] for i in order])
    triangular = True
    for a in range(len(ms)):
        for b in range(len(ms)):
            if abs(P[a, b]) > 1e-12 and ms[a] != ms[b] + s.k:
                triangular = False
    return {"max_violation": float(max_violation), "triangular_in_m": triangular}


def nilpotency_power(s: ShiftMatrix) -> int:
    """ceil((2 l_max + 1) / k): the azimuthal range forces S^p = 0."""
    return int(np.ceil((2 * s.l_max + 1) / s.k))


def phase_conjugation_residual(s: ShiftMatrix, alpha: float) -> float:
    """|D S D^{-1} - e^{i k alpha} S|_max for D = diag(e^{i m alpha})."""
    phases = np.array([np.exp(1j * m * alpha) for (_, m) in s.indices])
    conj = phases[:, None] * s.matrix * (1.0 / phases)[None, :]
    return float(np.max(np.abs(conj - np.exp(1j * s.k * alpha) * s.matrix)))
