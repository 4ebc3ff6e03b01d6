"""Dense complex eigenvalue, rank and Jordan-structure machinery."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import (
    AmbiguousClusterError,
    EigenvalueOnContourError,
    NonConvergenceError,
)

#: Relative singular-value threshold used by rank decisions.
DEFAULT_RANK_TOL = 1e-8

#: Required ratio between the smallest counted and the largest discarded
#: singular value; rank decisions closer than this fail loudly.
RANK_GAP_RATIO = 10.0


@dataclass(frozen=True)
class JordanReport:
    """Jordan structure of a matrix at one eigenvalue cluster."""

    location: complex
    algebraic_multiplicity: int
    geometric_multiplicity: int
    order: int
    rank_sequence: tuple

    def __post_init__(self):
        assert self.geometric_multiplicity <= self.algebraic_multiplicity
        assert self.order >= 1


def eigen_all(A, vectors: bool = False):
    """Full spectrum of a square complex matrix.

    Returns eigenvalues, or (eigenvalues, right eigenvectors) when
    ``vectors`` is set.  Raises NonConvergenceError instead of silently
    returning a partial spectrum.
    """
    A = np.asarray(A)
    try:
        if vectors:
            w, v = sla.eig(A)
            return w, v
        return sla.eigvals(A)
    except sla.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise NonConvergenceError(f"eigensolver failed: {exc}") from exc


def rank_numeric(A, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values above tol times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = sla.svdvals(np.asarray(A))
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def _rank_gapped(A, tol: float) -> int:
    """Rank with a loud failure when the singular spectrum has no clean gap."""
    s = sla.svdvals(np.asarray(A))
    if s.size == 0 or s[0] == 0.0:
        return 0
    thresh = tol * s[0]
    counted = s > thresh
    r = int(np.count_nonzero(counted))
    if 0 < r < s.size:
        gap = s[r - 1] / max(s[r], np.finfo(float).tiny)
        if gap < RANK_GAP_RATIO:
            raise AmbiguousClusterError(
                f"singular-value gap ratio {gap:.2f} < {RANK_GAP_RATIO} at rank {r}"
            )
    return r


def _rank_absolute(A, tol: float) -> int:
    """Singular values above an absolute threshold, with the gap check."""
    s = sla.svdvals(np.asarray(A))
    counted = s > tol
    r = int(np.count_nonzero(counted))
    if 0 < r < s.size:
        gap = s[r - 1] / max(s[r], np.finfo(float).tiny)
        if gap < RANK_GAP_RATIO:
            raise AmbiguousClusterError(
                f"singular-value gap ratio {gap:.2f} < {RANK_GAP_RATIO} at rank {r}"
            )
    return r


def jordan_structure(A, lam0: complex, tol: float = DEFAULT_RANK_TOL) -> JordanReport:
    """Jordan data of A at the eigenvalue cluster near lam0.

    Ranks of (A - lam0 I)^k are taken until they stabilize; each power is
    renormalized so nilpotent noise cannot overflow the rank decision.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    B = A - lam0 * np.eye(n)
    scale = sla.norm(B, 2)
    if scale <= tol:
        # the whole matrix is one semisimple cluster at lam0
        return JordanReport(complex(lam0), n, n, 1, (0,))
    B = B / scale
    ranks = []
    P = np.eye(n)
    for _ in range(n):
        # powers share one fixed scale so nilpotent noise stays below tol
        # instead of being renormalized back to order one
        P = P @ B
        r = _rank_absolute(P, tol)
        ranks.append(r)
        if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
            break
        if r == 0:
            ranks.append(0)
            break
    alg = n - ranks[-1]
    geom = n - ranks[0]
    order = 1
    for k in range(1, len(ranks)):
        if ranks[k] == ranks[k - 1]:
            order = k
            break
    else:
        order = len(ranks)
    return JordanReport(
        location=complex(lam0),
        algebraic_multiplicity=alg,
        geometric_multiplicity=geom,
        order=order,
        rank_sequence=tuple(ranks),
    )


def spectral_projector(A, center: complex, radius: float, q_nodes: int = 64):
    """Riesz projector of A onto the eigenvalues inside a circle.

    Trapezoid quadrature of (1/2*pi*i) * contour integral of (z - A)^{-1}.
    Refuses to integrate when an eigenvalue sits within 1e-8 of the circle.
    """
    if q_nodes < 64:
        raise ValueError("q_nodes must be at least 64")
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    w = eigen_all(A)
    dist = np.abs(np.abs(w - center) - radius)
    if np.any(dist < 1e-8):
        raise EigenvalueOnContourError(
            f"eigenvalue within {dist.min():.2e} of the quadrature circle"
        )
    phis = 2.0 * np.pi * np.arange(q_nodes) / q_nodes
    P = np.zeros((n, n), dtype=complex)
    eye = np.eye(n)
    for phi in phis:
        z = center + radius * np.exp(1j * phi)
        # dz = i * radius * e^{i phi} dphi ; the 1/(2 pi i) cancels the i
        P += radius * np.exp(1j * phi) * sla.solve(z * eye - A, eye)
    return P / q_nodes


def restrict_to_cluster(A, center: complex, radius: float, q_nodes: int = 64):
    """Compression of A onto the invariant subspace of a spectral cluster.

    Builds the Riesz projector for the circle, extracts an orthonormal basis
    of its range, and returns the (small) compressed matrix together with the
    cluster dimension.  The compression preserves the Jordan structure of the
    eigenvalues inside the circle.
    """
    A = np.asarray(A, dtype=complex)
    P = spectral_projector(A, center, radius, q_nodes)
    k = int(np.round(np.real(np.trace(P))))
    if k == 0:
        raise AmbiguousClusterError("no eigenvalues inside the cluster circle")
    w, V = sla.eig(P)
    idx = np.argsort(-np.abs(w))[:k]
    Q, _ = np.linalg.qr(V[:, idx])
    return Q.conj().T @ A @ Q, k
